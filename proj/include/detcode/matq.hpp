#pragma once

// Dense matrices over GF(q), Gaussian elimination, and the deterministic
// enumerations the brute-force oracles are built on: matrices of bounded rank
// (affine or projectively normalised) and r-dimensional subspaces of GF(q)^N.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "detcode/bigcount.hpp"
#include "detcode/counting.hpp"
#include "detcode/error.hpp"
#include "detcode/gf.hpp"

namespace detcode {

enum class Mode { affine, projective };

constexpr std::string_view to_string(Mode mode) { return mode == Mode::affine ? "affine" : "projective"; }

inline Mode parse_mode(std::string_view text) {
  if (text == "affine") return Mode::affine;
  if (text == "projective") return Mode::projective;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "'");
}

/// Upper limits for exhaustive work; exceeding them raises BudgetExceeded.
struct Budgets {
  static constexpr std::uint64_t kDomainPoints = 10'000'000;
  static constexpr std::uint64_t kSubspaces = 10'000'000;
  static constexpr std::uint64_t kSpaceScan = std::uint64_t{1} << 26;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw Error(ErrorCode::ShapeMismatch, "entry count does not match " + std::to_string(rows_) + "x" +
                                                std::to_string(cols_));
  }

  static Matrix identity(std::size_t n) {
    Matrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    return id;
  }

  /// Matrix with a single 1 at (i, j).
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix e(rows, cols);
    e(i, j) = 1;
    return e;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }

  Elem& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const noexcept { return {entries_.data() + i * cols_, cols_}; }

  const std::vector<Elem>& entries() const noexcept { return entries_; }
  std::vector<Elem>& entries() noexcept { return entries_; }

  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](Elem x) { return x == 0; });
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  auto operator<=>(const Matrix&) const = default;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> entries_;
};

namespace detail {

// In-place row reduction of a rows x cols block; returns the rank. When
// `pivots` is non-null the pivot columns are recorded and the block is left
// in reduced row echelon form.
inline std::size_t eliminate(const Field& f, Elem* a, std::size_t rows, std::size_t cols,
                             std::vector<std::size_t>* pivots = nullptr, bool reduce_above = false) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      std::swap_ranges(a + pivot * cols, a + pivot * cols + cols, a + rank * cols);
    Elem* prow = a + rank * cols;
    const Elem scale = f.inv(prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], scale);
    const std::size_t start = reduce_above ? 0 : rank + 1;
    for (std::size_t i = start; i < rows; ++i) {
      if (i == rank) continue;
      Elem* row = a + i * cols;
      const Elem factor = row[c];
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (std::size_t j = c; j < cols; ++j) row[j] = f.add(row[j], f.mul(nf, prow[j]));
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline std::size_t rank(const Field& f, Matrix m) {
  return detail::eliminate(f, m.entries().data(), m.rows(), m.cols());
}

/// Rank of a rows x cols matrix stored row-major in `entries` (copied).
inline std::size_t rank_of(const Field& f, std::span<const Elem> entries, std::size_t rows, std::size_t cols) {
  Elem buffer[64];
  std::vector<Elem> heap;
  Elem* a = buffer;
  if (entries.size() > 64) {
    heap.assign(entries.begin(), entries.end());
    a = heap.data();
  } else {
    std::copy(entries.begin(), entries.end(), buffer);
  }
  return detail::eliminate(f, a, rows, cols);
}

struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

inline EchelonForm rref(const Field& f, Matrix m) {
  EchelonForm out;
  detail::eliminate(f, m.entries().data(), m.rows(), m.cols(), &out.pivots, true);
  out.reduced = std::move(m);
  return out;
}

inline Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

inline bool is_invertible(const Field& f, const Matrix& m) { return m.rows() == m.cols() && rank(f, m) == m.rows(); }

/// P, Q invertible with P * M * Q = [I_r 0; 0 0].
struct NormalForm {
  Matrix P;
  Matrix Q;
  std::size_t rank = 0;
};

inline NormalForm normal_form(const Field& f, const Matrix& m) {
  const std::size_t l = m.rows();
  const std::size_t n = m.cols();
  // Row-reduce [M | I] so the right block records the row operations.
  Matrix aug(l, n + l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  // Only the first n columns may host pivots.
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && r < l; ++c) {
    std::size_t pivot = r;
    while (pivot < l && aug(pivot, c) == 0) ++pivot;
    if (pivot == l) continue;
    if (pivot != r) std::swap_ranges(aug.row(pivot).begin(), aug.row(pivot).end(), aug.row(r).begin());
    const Elem scale = f.inv(aug(r, c));
    for (auto& x : aug.row(r)) x = f.mul(x, scale);
    for (std::size_t i = 0; i < l; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Elem nf = f.neg(aug(i, c));
      for (std::size_t j = 0; j < n + l; ++j) aug(i, j) = f.add(aug(i, j), f.mul(nf, aug(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  NormalForm out;
  out.rank = r;
  out.P = Matrix(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) out.P(i, j) = aug(i, n + j);

  // R = P*M is in RREF. Move pivot columns to the front, then clear the rest.
  std::vector<std::size_t> order = pivots;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) order.push_back(c);
  Matrix perm(n, n);
  for (std::size_t k = 0; k < n; ++k) perm(order[k], k) = 1;
  Matrix clear = Matrix::identity(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = r; k < n; ++k) clear(i, k) = f.neg(aug(i, order[k]));
  out.Q = multiply(f, perm, clear);
  return out;
}

inline Matrix outer(const Field& f, std::span<const Elem> u, std::span<const Elem> v) {
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = f.mul(u[i], v[j]);
  return m;
}

/// M_11 + ... + M_rr.
inline FieldElement partial_trace(const Field& f, const Matrix& m, std::size_t r) {
  if (r < 1 || r > std::min(m.rows(), m.cols()))
    throw Error(ErrorCode::IndexOutOfRange, "partial trace index " + std::to_string(r));
  Elem s = 0;
  for (std::size_t i = 0; i < r; ++i) s = f.add(s, m(i, i));
  return {f, s};
}

/// Row-major entries read as base-q digits, first entry most significant, so
/// increasing index is lexicographic order on entry tuples.
class IndexCodec {
 public:
  IndexCodec(std::uint32_t q, std::size_t length) : q_(q), length_(length) {
    BigCount total = big_pow(q, length);
    if (total > BigCount(std::numeric_limits<std::uint64_t>::max() / q))
      throw Error(ErrorCode::BudgetExceeded, "q^" + std::to_string(length) + " does not fit 64 bits");
    total_ = static_cast<std::uint64_t>(total);
  }

  std::uint64_t total() const noexcept { return total_; }
  std::size_t length() const noexcept { return length_; }

  std::uint64_t encode(std::span<const Elem> digits) const noexcept {
    std::uint64_t x = 0;
    for (Elem d : digits) x = x * q_ + d;
    return x;
  }

  void decode(std::uint64_t index, std::span<Elem> out) const noexcept {
    for (std::size_t k = length_; k-- > 0;) {
      out[k] = static_cast<Elem>(index % q_);
      index /= q_;
    }
  }

 private:
  std::uint64_t q_;
  std::size_t length_;
  std::uint64_t total_ = 0;
};

namespace detail {

inline bool first_nonzero_is_one(std::span<const Elem> entries) {
  for (Elem x : entries)
    if (x != 0) return x == 1;
  return false;
}

inline void check_enumeration_params(std::size_t l, std::size_t m, std::size_t t, Mode mode) {
  if (l < 1 || l > m || t > l)
    throw Error(ErrorCode::BadParameters, "need 0 <= t <= l <= m with l >= 1");
  if (mode == Mode::projective && t == 0)
    throw Error(ErrorCode::EmptyVariety, "projective domain of rank <= 0 is empty");
}

}  // namespace detail

/// Visits each l x m matrix of rank <= t (affine) or each projective point of
/// rank in [1, t] with its first nonzero entry scaled to 1, in lexicographic
/// order. The callback receives the row-major entries and the rank.
template <class Visit>
void for_each_bounded_rank(const Field& f, std::size_t l, std::size_t m, std::size_t t, Mode mode, Visit&& visit) {
  detail::check_enumeration_params(l, m, t, mode);
  const IndexCodec codec(f.order(), l * m);
  if (codec.total() > Budgets::kSpaceScan)
    throw Error(ErrorCode::BudgetExceeded, "q^(lm) = " + std::to_string(codec.total()) + " exceeds scan budget");
  std::vector<Elem> entries(l * m);
  for (std::uint64_t idx = 0; idx < codec.total(); ++idx) {
    codec.decode(idx, entries);
    if (mode == Mode::projective && !detail::first_nonzero_is_one(entries)) continue;
    const std::size_t rk = rank_of(f, entries, l, m);
    if (rk <= t) visit(std::span<const Elem>(entries), rk);
  }
}

inline std::vector<Matrix> enumerate_matrices(const Field& f, std::size_t l, std::size_t m, std::size_t t, Mode mode) {
  std::vector<Matrix> out;
  for_each_bounded_rank(f, l, m, t, mode, [&](std::span<const Elem> e, std::size_t) {
    if (out.size() >= Budgets::kDomainPoints) throw Error(ErrorCode::BudgetExceeded, "too many matrices");
    out.emplace_back(l, m, std::vector<Elem>(e.begin(), e.end()));
  });
  return out;
}

namespace detail {
struct SubspaceAccess;
}

/// An r-dimensional subspace of GF(q)^N held as its reduced row echelon basis,
/// which is unique, so equality of bases is equality of subspaces.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  /// Span of the given vectors (rows of `generators`).
  static SubspaceBasis span_of(const Field& f, const Matrix& generators) {
    EchelonForm e = rref(f, generators);
    const std::size_t r = e.pivots.size();
    std::vector<Elem> rows(e.reduced.entries().begin(), e.reduced.entries().begin() + r * generators.cols());
    SubspaceBasis s;
    s.basis_ = Matrix(r, generators.cols(), std::move(rows));
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static SubspaceBasis span_of(const Field& f, std::size_t ambient_dim, const std::vector<std::vector<Elem>>& vectors) {
    Matrix g(vectors.size(), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient_dim) throw Error(ErrorCode::ShapeMismatch, "vector length");
      for (std::size_t j = 0; j < ambient_dim; ++j) g(i, j) = vectors[i][j];
    }
    return span_of(f, g);
  }

  /// Trusted constructor for a matrix already in RREF with the given pivots.
  static SubspaceBasis from_rref(Matrix basis, std::vector<std::size_t> pivots) {
    SubspaceBasis s;
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
  }

  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Membership test: x lies in the span iff it equals the combination of
  /// basis rows given by its pivot coordinates.
  bool contains(const Field& f, std::span<const Elem> x) const {
    const std::size_t n = ambient_dim();
    for (std::size_t j = 0; j < n; ++j) {
      Elem s = 0;
      for (std::size_t i = 0; i < dim(); ++i) s = f.add(s, f.mul(x[pivots_[i]], basis_(i, j)));
      if (s != x[j]) return false;
    }
    return true;
  }

  bool operator==(const SubspaceBasis& o) const { return basis_ == o.basis_; }

 private:
  friend struct detail::SubspaceAccess;

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

namespace detail {
struct SubspaceAccess {
  static std::vector<Elem>& entries(SubspaceBasis& s) { return s.basis_.entries(); }
};
}  // namespace detail

/// All r-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> pivot_profiles(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Visits every subspace whose RREF basis has the given pivot columns, with
/// free entries in lexicographic (row-major odometer) order. The visitor
/// returns false to stop early; the function returns false in that case.
template <class Visit>
bool for_each_subspace_in_profile(const Field& f, std::size_t n, const std::vector<std::size_t>& profile,
                                  Visit&& visit) {
  const std::size_t r = profile.size();
  Matrix basis(r, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < r; ++i) {
    basis(i, profile[i]) = 1;
    is_pivot[profile[i]] = true;
  }
  std::vector<std::size_t> free_slots;  // flat offsets into the basis entries
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = profile[i] + 1; j < n; ++j)
      if (!is_pivot[j]) free_slots.push_back(i * n + j);

  const Elem q_minus_1 = static_cast<Elem>(f.order() - 1);
  SubspaceBasis current = SubspaceBasis::from_rref(basis, profile);
  auto& entries = detail::SubspaceAccess::entries(current);
  while (true) {
    if (!visit(static_cast<const SubspaceBasis&>(current))) return false;
    // Odometer with the last free slot fastest.
    std::size_t k = free_slots.size();
    while (k > 0 && entries[free_slots[k - 1]] == q_minus_1) {
      entries[free_slots[k - 1]] = 0;
      --k;
    }
    if (k == 0) return true;
    ++entries[free_slots[k - 1]];
  }
}

inline void check_subspace_budget(std::size_t n, std::size_t r, std::uint64_t q) {
  if (r > n) throw Error(ErrorCode::BadParameters, "subspace dimension exceeds ambient dimension");
  const BigCount count = gaussian_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), q);
  if (count > Budgets::kSubspaces)
    throw Error(ErrorCode::BudgetExceeded, count.str() + " subspaces exceeds budget");
}

/// Each r-dimensional subspace of GF(q)^n exactly once, grouped by pivot profile.
template <class Visit>
void for_each_subspace(const Field& f, std::size_t n, std::size_t r, Visit&& visit) {
  check_subspace_budget(n, r, f.order());
  for (const auto& profile : pivot_profiles(n, r)) {
    const bool go_on = for_each_subspace_in_profile(f, n, profile, [&](const SubspaceBasis& s) {
      if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const SubspaceBasis&>, bool>) {
        return visit(s);
      } else {
        visit(s);
        return true;
      }
    });
    if (!go_on) return;
  }
}

inline std::vector<SubspaceBasis> enumerate_subspaces(const Field& f, std::size_t n, std::size_t r) {
  std::vector<SubspaceBasis> out;
  for_each_subspace(f, n, r, [&](const SubspaceBasis& s) { out.push_back(s); });
  return out;
}

/// l lines of m space-separated element indices.
inline std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

inline Matrix parse_matrix(const Field& f, std::string_view text) {
  std::vector<Elem> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string token;
    std::size_t count = 0;
    while (ls >> token) {
      entries.push_back(FieldElement::parse(f, token).index());
      ++count;
    }
    if (count == 0) continue;
    if (rows == 0) cols = count;
    if (count != cols) throw Error(ErrorCode::ParseError, "ragged matrix row " + std::to_string(rows + 1));
    ++rows;
  }
  return Matrix(rows, cols, std::move(entries));
}

}  // namespace detcode
