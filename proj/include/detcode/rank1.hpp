#pragma once

// Rank-1 matrices as outer products, linear spaces in which every nonzero
// element has rank 1, and exhaustive maxima of the number of rank-1 elements
// in r-dimensional spaces of l x m matrices.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "detcode/bigcount.hpp"
#include "detcode/counting.hpp"
#include "detcode/detcode.hpp"
#include "detcode/error.hpp"
#include "detcode/gf.hpp"
#include "detcode/matq.hpp"
#include "detcode/parallel.hpp"

namespace detcode {

/// M = u^T v with the first nonzero entry of u equal to 1.
struct Rank1Factorization {
  std::vector<Elem> u;
  std::vector<Elem> v;
};

inline Rank1Factorization factor(const Field& f, const Matrix& m) {
  if (rank(f, m) != 1) throw Error(ErrorCode::NotRankOne, "matrix does not have rank 1");
  std::size_t i0 = 0;
  while (i0 < m.rows() && std::all_of(m.row(i0).begin(), m.row(i0).end(), [](Elem x) { return x == 0; })) ++i0;
  std::size_t j0 = 0;
  while (m(i0, j0) == 0) ++j0;
  const Elem pivot_inv = f.inv(m(i0, j0));
  Rank1Factorization out;
  out.v.assign(m.row(i0).begin(), m.row(i0).end());
  out.u.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out.u[i] = f.mul(m(i, j0), pivot_inv);
  return out;
}

namespace detail {

inline bool is_zero_vector(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

inline std::size_t span_dim(const Field& f, std::initializer_list<std::span<const Elem>> vectors) {
  const std::size_t n = vectors.begin()->size();
  Matrix g(vectors.size(), n);
  std::size_t i = 0;
  for (auto v : vectors) {
    if (v.size() != n) throw Error(ErrorCode::ShapeMismatch, "vector lengths differ");
    std::copy(v.begin(), v.end(), g.row(i++).begin());
  }
  return rank(f, g);
}

inline Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.entries()[k] = f.add(a.entries()[k], b.entries()[k]);
  return c;
}

}  // namespace detail

/// Given nonzero vectors with u^T v + a^T b = x^T y, reports whether
/// <u, a, x> or <v, b, y> is one-dimensional (it always should be).
inline bool rank1_sum_check(const Field& f, std::span<const Elem> u, std::span<const Elem> a, std::span<const Elem> x,
                            std::span<const Elem> v, std::span<const Elem> b, std::span<const Elem> y) {
  if (a.size() != u.size() || x.size() != u.size() || b.size() != v.size() || y.size() != v.size())
    throw Error(ErrorCode::ShapeMismatch, "vector lengths differ");
  for (auto w : {u, a, x, v, b, y})
    if (detail::is_zero_vector(w)) throw Error(ErrorCode::BadParameters, "all six vectors must be nonzero");
  if (detail::add(f, outer(f, u, v), outer(f, a, b)) != outer(f, x, y))
    throw Error(ErrorCode::EquationViolated, "u^T v + a^T b != x^T y");
  return detail::span_dim(f, {u, a, x}) == 1 || detail::span_dim(f, {v, b, y}) == 1;
}

/// A space of l x m matrices all of whose nonzero elements have rank 1 is
/// {u^T v : v in V} (row type) or {u^T v : u in U} (column type).
struct Rank1SpaceClass {
  enum class Tag { row_type, col_type, not_constant_rank1 };

  Tag tag = Tag::not_constant_rank1;
  std::vector<Elem> fixed;  // u for row type, v for column type
  SubspaceBasis varying;    // V for row type, U for column type
};

/// Reads an element of the l*m-dimensional matrix space as an l x m matrix.
inline Matrix as_matrix(std::span<const Elem> v, std::size_t l, std::size_t m) {
  return Matrix(l, m, std::vector<Elem>(v.begin(), v.end()));
}

/// Number of rank-1 elements, by enumerating all q^r elements of the space.
inline std::uint64_t count_rank1(const Field& f, const SubspaceBasis& space, std::size_t l, std::size_t m) {
  if (space.ambient_dim() != l * m) throw Error(ErrorCode::ShapeMismatch, "space is not in Mat_{l x m}");
  if (big_pow(f.order(), space.dim()) > Budgets::kSpaceScan)
    throw Error(ErrorCode::BudgetExceeded, "space too large to enumerate");
  std::uint64_t count = 0;
  detail::for_each_span_element(f, space.basis(), [&](std::span<const Elem> e) {
    if (rank_of(f, e, l, m) == 1) ++count;
  });
  return count;
}

inline Rank1SpaceClass classify_space(const Field& f, const SubspaceBasis& space, std::size_t l, std::size_t m) {
  const std::size_t dim = space.dim();
  const std::uint64_t rank1 = count_rank1(f, space, l, m);
  Rank1SpaceClass out;
  if (BigCount(rank1) != big_pow(f.order(), dim) - 1) return out;
  if (dim > std::max(l, m))
    throw Error(ErrorCode::InternalFormulaMismatch, "constant-rank-1 space larger than max(l, m)");
  if (dim == 0) {
    out.tag = Rank1SpaceClass::Tag::row_type;
    out.fixed.assign(l, 0);
    out.fixed[0] = 1;
    out.varying = SubspaceBasis::span_of(f, Matrix(0, m));
    return out;
  }
  std::vector<Rank1Factorization> rows;
  for (std::size_t i = 0; i < dim; ++i) rows.push_back(factor(f, as_matrix(space.basis().row(i), l, m)));
  const bool same_u = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r.u == rows[0].u; });
  if (same_u) {
    Matrix vs(dim, m);
    for (std::size_t i = 0; i < dim; ++i) std::copy(rows[i].v.begin(), rows[i].v.end(), vs.row(i).begin());
    out.tag = Rank1SpaceClass::Tag::row_type;
    out.fixed = rows[0].u;
    out.varying = SubspaceBasis::span_of(f, vs);
    return out;
  }
  std::vector<Rank1Factorization> cols;
  for (std::size_t i = 0; i < dim; ++i) cols.push_back(factor(f, as_matrix(space.basis().row(i), l, m).transposed()));
  const bool same_v = std::all_of(cols.begin(), cols.end(), [&](const auto& c) { return c.u == cols[0].u; });
  if (!same_v) throw Error(ErrorCode::InternalFormulaMismatch, "constant-rank-1 space of neither type");
  Matrix us(dim, l);
  for (std::size_t i = 0; i < dim; ++i) std::copy(cols[i].v.begin(), cols[i].v.end(), us.row(i).begin());
  out.tag = Rank1SpaceClass::Tag::col_type;
  out.fixed = cols[0].u;
  out.varying = SubspaceBasis::span_of(f, us);
  return out;
}

/// One representative (both factors normalised) of every projective rank-1
/// point of Mat_{l x m}, flattened row-major.
inline std::vector<Elem> projective_rank1_points(const Field& f, std::size_t l, std::size_t m) {
  std::vector<Elem> out;
  const IndexCodec cu(f.order(), l);
  const IndexCodec cv(f.order(), m);
  std::vector<Elem> u(l), v(m);
  for (std::uint64_t iu = 1; iu < cu.total(); ++iu) {
    cu.decode(iu, u);
    if (!detail::first_nonzero_is_one(u)) continue;
    for (std::uint64_t iv = 1; iv < cv.total(); ++iv) {
      cv.decode(iv, v);
      if (!detail::first_nonzero_is_one(v)) continue;
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < m; ++j) out.push_back(f.mul(u[i], v[j]));
    }
  }
  return out;
}

/// Number of rank-1 elements by testing each projective rank-1 point for
/// membership; independent of count_rank1's element enumeration.
inline std::uint64_t count_rank1_by_membership(const Field& f, const SubspaceBasis& space,
                                               std::span<const Elem> rank1_points) {
  const std::size_t n = space.ambient_dim();
  const std::size_t r = space.dim();
  const auto& piv = space.pivots();
  const Matrix& b = space.basis();
  std::vector<std::size_t> free_cols;
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  std::uint64_t count = 0;
  for (std::size_t k = 0; k + n <= rank1_points.size(); k += n) {
    const Elem* x = rank1_points.data() + k;
    bool inside = true;
    for (std::size_t j : free_cols) {
      Elem s = 0;
      for (std::size_t i = 0; i < r; ++i) {
        const Elem c = x[piv[i]];
        if (c != 0 && b(i, j) != 0) s = f.add(s, f.mul(c, b(i, j)));
      }
      if (s != x[j]) {
        inside = false;
        break;
      }
    }
    if (inside) ++count;
  }
  return count * (f.order() - 1);
}

struct Rank1Extremum {
  std::uint64_t max_count = 0;
  SubspaceBasis witness;
  std::optional<Rank1Bound> bound;  // absent when l < 2
  bool consistent = true;           // max <= bound for r > m; max = q^r - 1 for r <= m
};

/// Exact maximum number of rank-1 matrices over all r-dimensional subspaces
/// of Mat_{l x m}(GF(q)). The witness is the first maximiser in enumeration
/// order (pivot profile, then free entries), whatever the thread count.
inline Rank1Extremum max_rank1_exhaustive(const Field& f, std::size_t l, std::size_t m, std::size_t r,
                                          const SearchOptions& options = {}) {
  if (l < 1 || l > m) throw Error(ErrorCode::BadParameters, "need 1 <= l <= m");
  const std::size_t n = l * m;
  if (r < 1 || r > n) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
  const std::uint64_t q = f.order();
  const std::uint64_t all_nonzero = static_cast<std::uint64_t>(big_pow(q, r) - 1);

  const std::vector<Elem> points = projective_rank1_points(f, l, m);
  const std::uint64_t point_count = points.size() / n;
  // Cheaper of walking q^r elements or testing each rank-1 point.
  const bool by_membership = BigCount(point_count) * (n - r + 1) < big_pow(q, r);
  std::vector<std::uint8_t> ranks;
  std::optional<IndexCodec> codec;
  if (!by_membership) {
    codec.emplace(f.order(), n);
    if (codec->total() <= Budgets::kSpaceScan) {
      ranks.resize(codec->total());
      std::vector<Elem> e(n);
      for (std::uint64_t idx = 0; idx < codec->total(); ++idx) {
        codec->decode(idx, e);
        ranks[idx] = static_cast<std::uint8_t>(rank_of(f, e, l, m));
      }
    }
  }
  auto count_in = [&](const SubspaceBasis& s) -> std::uint64_t {
    if (by_membership) return count_rank1_by_membership(f, s, points);
    if (ranks.empty()) return count_rank1(f, s, l, m);
    std::uint64_t c = 0;
    detail::for_each_span_element(f, s.basis(), [&](std::span<const Elem> e) {
      if (ranks[codec->encode(e)] == 1) ++c;
    });
    return c;
  };

  struct Best {
    std::uint64_t count = 0;
    std::size_t profile = std::numeric_limits<std::size_t>::max();
    std::uint64_t ordinal = 0;
    std::optional<SubspaceBasis> basis;
  };
  auto better = [](const Best& a, const Best& b) {
    if (!b.basis) return true;
    if (a.count != b.count) return a.count > b.count;
    return std::pair(a.profile, a.ordinal) < std::pair(b.profile, b.ordinal);
  };
  const Best best = reduce_subspaces<Best>(
      f, n, r, options.threads, Best{},
      [&](Best& acc, const SubspaceBasis& s, std::size_t profile, std::uint64_t ordinal) {
        Best cand{count_in(s), profile, ordinal, std::nullopt};
        if (better(cand, acc)) {
          cand.basis = s;
          acc = std::move(cand);
        }
        return !(options.early_exit && acc.count == all_nonzero);
      },
      [&](Best& into, const Best& part) {
        if (part.basis && better(part, into)) into = part;
      });

  Rank1Extremum out;
  out.max_count = best.count;
  out.witness = *best.basis;
  if (l >= 2) {
    out.bound = rank1_bound(static_cast<std::int64_t>(r), static_cast<std::int64_t>(l), static_cast<std::int64_t>(m), q);
    out.consistent = out.bound->hypothesis_holds ? BigCount(out.max_count) <= out.bound->max_rank1
                                                 : out.max_count == all_nonzero;
  } else {
    out.consistent = out.max_count == all_nonzero;
  }
  return out;
}

}  // namespace detcode
