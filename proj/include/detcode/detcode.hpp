#pragma once

// Determinantal codes: evaluation of linear forms in the entries of an l x m
// matrix at every matrix of rank <= t (affine) or at one representative of
// each such projective point. Also the brute-force oracles that every closed
// form is checked against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "detcode/bigcount.hpp"
#include "detcode/counting.hpp"
#include "detcode/error.hpp"
#include "detcode/gf.hpp"
#include "detcode/matq.hpp"
#include "detcode/parallel.hpp"

namespace detcode {

struct CodeParams {
  Field field;
  std::size_t l;
  std::size_t m;
  std::size_t t;
  Mode mode = Mode::projective;

  CodeParams(Field f, std::size_t l_, std::size_t m_, std::size_t t_, Mode mode_ = Mode::projective)
      : field(std::move(f)), l(l_), m(m_), t(t_), mode(mode_) {
    if (l < 1 || l > m) throw Error(ErrorCode::BadParameters, "need 1 <= l <= m");
    if (t < 1 || t > l) throw Error(ErrorCode::BadParameters, "need 1 <= t <= l");
  }

  std::uint32_t q() const noexcept { return field.order(); }
  std::size_t dimension() const noexcept { return l * m; }

  CodeParams with_mode(Mode other) const { return {field, l, m, t, other}; }

  std::string describe() const {
    std::ostringstream os;
    os << "q=" << q() << " l=" << l << " m=" << m << " t=" << t << " " << to_string(mode);
    return os.str();
  }
};

/// f = sum F_ij X_ij, stored as its coefficient matrix F.
struct LinearForm {
  Matrix coeffs;

  static LinearForm variable(std::size_t l, std::size_t m, std::size_t i, std::size_t j) {
    return {Matrix::unit(l, m, i, j)};
  }

  /// tau_r = X_11 + ... + X_rr.
  static LinearForm partial_trace(std::size_t l, std::size_t m, std::size_t r) {
    Matrix f(l, m);
    for (std::size_t i = 0; i < r; ++i) f(i, i) = 1;
    return {std::move(f)};
  }
};

struct Codeword {
  std::vector<Elem> symbols;

  std::uint64_t weight() const noexcept {
    return static_cast<std::uint64_t>(std::count_if(symbols.begin(), symbols.end(), [](Elem x) { return x != 0; }));
  }
};

/// Ordered evaluation points, stored flat (l*m entries per point).
class EvaluationDomain {
 public:
  explicit EvaluationDomain(const CodeParams& params) : params_(params) {
    const Lengths expected = lengths(static_cast<std::int64_t>(params.l), static_cast<std::int64_t>(params.m),
                                     static_cast<std::int64_t>(params.t), params.q());
    const BigCount& size = params.mode == Mode::affine ? expected.n : expected.n_hat;
    if (size > Budgets::kDomainPoints)
      throw Error(ErrorCode::BudgetExceeded, "domain of " + size.str() + " points exceeds budget");
    const std::size_t stride = params.l * params.m;
    entries_.reserve(static_cast<std::size_t>(size) * stride);
    for_each_bounded_rank(params.field, params.l, params.m, params.t, params.mode,
                          [&](std::span<const Elem> e, std::size_t rk) {
                            entries_.insert(entries_.end(), e.begin(), e.end());
                            ranks_.push_back(static_cast<std::uint8_t>(rk));
                          });
  }

  const CodeParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t stride() const noexcept { return params_.l * params_.m; }

  std::span<const Elem> point_entries(std::size_t i) const noexcept {
    return {entries_.data() + i * stride(), stride()};
  }
  Matrix point(std::size_t i) const {
    auto e = point_entries(i);
    return Matrix(params_.l, params_.m, std::vector<Elem>(e.begin(), e.end()));
  }
  std::size_t point_rank(std::size_t i) const noexcept { return ranks_[i]; }

  std::vector<Matrix> points() const {
    std::vector<Matrix> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
  }

 private:
  CodeParams params_;
  std::vector<Elem> entries_;
  std::vector<std::uint8_t> ranks_;
};

namespace detail {

inline Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) noexcept {
  Elem s = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0 && b[k] != 0) s = f.add(s, f.mul(a[k], b[k]));
  return s;
}

}  // namespace detail

/// Symbol i is f(M_i).
inline Codeword evaluate(const LinearForm& form, const EvaluationDomain& dom) {
  const auto& p = dom.params();
  if (form.coeffs.rows() != p.l || form.coeffs.cols() != p.m)
    throw Error(ErrorCode::ShapeMismatch, "linear form shape does not match the domain");
  Codeword c;
  c.symbols.resize(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) c.symbols[i] = detail::dot(p.field, form.coeffs.entries(), dom.point_entries(i));
  return c;
}

/// Row (i, j) in row-major order is the evaluation of X_ij.
inline Matrix generator_matrix(const EvaluationDomain& dom) {
  const std::size_t k = dom.stride();
  Matrix g(k, dom.size());
  for (std::size_t c = 0; c < dom.size(); ++c) {
    auto e = dom.point_entries(c);
    for (std::size_t r = 0; r < k; ++r) g(r, c) = e[r];
  }
  return g;
}

/// Header "q l m t mode n k" then k rows of n element indices.
inline std::string format_generator_matrix(const CodeParams& p, const Matrix& g) {
  std::ostringstream os;
  os << p.q() << ' ' << p.l << ' ' << p.m << ' ' << p.t << ' ' << to_string(p.mode) << ' ' << g.cols() << ' '
     << g.rows() << '\n';
  os << format_matrix(g);
  return os.str();
}

struct ParsedGenerator {
  std::uint32_t q = 0;
  std::size_t l = 0, m = 0, t = 0;
  Mode mode = Mode::projective;
  Matrix generator;
};

inline ParsedGenerator parse_generator_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  ParsedGenerator out;
  std::string mode;
  std::size_t n = 0, k = 0;
  if (!(in >> out.q >> out.l >> out.m >> out.t >> mode >> n >> k))
    throw Error(ErrorCode::ParseError, "bad generator matrix header");
  out.mode = parse_mode(mode);
  const Field f = field_of_order(out.q);
  std::vector<Elem> entries(n * k);
  for (auto& x : entries) {
    std::uint64_t v = 0;
    if (!(in >> v) || !f.contains(v)) throw Error(ErrorCode::ParseError, "bad generator matrix entry");
    x = static_cast<Elem>(v);
  }
  out.generator = Matrix(k, n, std::move(entries));
  return out;
}

/// Weight enumerator as sorted (weight, count) pairs.
struct SpectrumReport {
  Mode mode = Mode::projective;
  std::vector<std::pair<BigCount, BigCount>> pairs;
  BigCount total = 0;

  static SpectrumReport from_terms(Mode mode, const std::vector<std::pair<BigCount, BigCount>>& terms) {
    std::map<BigCount, BigCount> merged;
    for (const auto& [w, c] : terms)
      if (c != 0) merged[w] += c;
    SpectrumReport s;
    s.mode = mode;
    for (auto& [w, c] : merged) {
      s.pairs.emplace_back(w, c);
      s.total += c;
    }
    return s;
  }

  BigCount count_of(const BigCount& weight) const {
    for (const auto& [w, c] : pairs)
      if (w == weight) return c;
    return 0;
  }

  /// Smallest nonzero weight.
  BigCount minimum_distance() const {
    for (const auto& [w, c] : pairs)
      if (w != 0) return w;
    return 0;
  }

  bool operator==(const SpectrumReport&) const = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < pairs.size(); ++i) os << (i ? ", " : "") << pairs[i].first << ':' << pairs[i].second;
    os << '}';
    return os.str();
  }
};

namespace detail {

/// Visits every element of the GF(q)-span of the rows of `basis`. The span is
/// walked as a GF(p)-space on generators X^j * b_i with a p-ary Gray code, so
/// each step adds exactly one generator.
template <class Fn>
void for_each_span_element(const Field& f, const Matrix& basis, Fn&& fn) {
  const std::size_t n = basis.cols();
  const int p = f.characteristic();
  std::vector<std::vector<Elem>> gens;
  Elem scalar = 1;
  for (int j = 0; j < f.degree(); ++j) {
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      std::vector<Elem> g(n);
      for (std::size_t c = 0; c < n; ++c) g[c] = f.mul(scalar, basis(i, c));
      gens.push_back(std::move(g));
    }
    scalar = static_cast<Elem>(scalar * p);
  }
  std::vector<Elem> cur(n, 0);
  std::vector<int> counter(gens.size(), 0);
  fn(std::span<const Elem>(cur));
  while (true) {
    std::size_t k = 0;
    while (k < counter.size() && counter[k] == p - 1) counter[k++] = 0;
    if (k == counter.size()) return;
    ++counter[k];
    for (std::size_t c = 0; c < n; ++c) cur[c] = f.add(cur[c], gens[k][c]);
    fn(std::span<const Elem>(cur));
  }
}

}  // namespace detail

/// The code together with cached per-rank weights. The weight of any codeword
/// is the weight of the partial trace of the same rank as its coefficient matrix.
class DeterminantalCode {
 public:
  explicit DeterminantalCode(const CodeParams& params) : params_(params), domain_(params) {
    const auto& f = params_.field;
    rank_weights_.assign(params_.l + 1, 0);
    for (std::size_t r = 1; r <= params_.l; ++r) {
      std::uint64_t w = 0;
      for (std::size_t i = 0; i < domain_.size(); ++i) {
        auto e = domain_.point_entries(i);
        Elem s = 0;
        for (std::size_t d = 0; d < r; ++d) s = f.add(s, e[d * params_.m + d]);
        if (s != 0) ++w;
      }
      rank_weights_[r] = w;
    }
  }

  const CodeParams& params() const noexcept { return params_; }
  const Field& field() const noexcept { return params_.field; }
  const EvaluationDomain& domain() const noexcept { return domain_; }
  std::uint64_t length() const noexcept { return domain_.size(); }
  std::size_t dimension() const noexcept { return params_.dimension(); }

  /// Weight of the partial trace tau_r, measured on the domain; index 0 is the zero form.
  const std::vector<std::uint64_t>& rank_weights() const noexcept { return rank_weights_; }

  std::uint64_t minimum_distance() const noexcept {
    return *std::min_element(rank_weights_.begin() + 1, rank_weights_.end());
  }

  std::uint64_t weight_of_form(const Matrix& coeffs) const {
    if (coeffs.rows() != params_.l || coeffs.cols() != params_.m)
      throw Error(ErrorCode::ShapeMismatch, "linear form shape does not match the code");
    return rank_weights_[rank(params_.field, coeffs)];
  }
  std::uint64_t weight_of_form(const LinearForm& form) const { return weight_of_form(form.coeffs); }

  Codeword evaluate(const LinearForm& form) const { return detcode::evaluate(form, domain_); }

  /// Rank of every coefficient matrix, indexed by its lexicographic index.
  const std::vector<std::uint8_t>& form_ranks() const {
    std::call_once(form_ranks_once_->flag, [&] {
      const IndexCodec codec(params_.q(), dimension());
      if (codec.total() > Budgets::kSpaceScan)
        throw Error(ErrorCode::BudgetExceeded, "form space of size " + std::to_string(codec.total()));
      auto& table = form_ranks_once_->table;
      table.resize(codec.total());
      std::vector<Elem> e(dimension());
      for (std::uint64_t idx = 0; idx < codec.total(); ++idx) {
        codec.decode(idx, e);
        table[idx] = static_cast<std::uint8_t>(rank_of(params_.field, e, params_.l, params_.m));
      }
    });
    return form_ranks_once_->table;
  }

  /// Rank-grouped enumerator: mu_r forms of rank r all have weight w_r.
  SpectrumReport brute_weight_enumerator() const {
    std::vector<std::pair<BigCount, BigCount>> terms;
    for (std::size_t r = 0; r <= params_.l; ++r)
      terms.emplace_back(BigCount(rank_weights_[r]),
                         mu(static_cast<std::int64_t>(params_.l), static_cast<std::int64_t>(params_.m),
                            static_cast<std::int64_t>(r), params_.q()));
    return SpectrumReport::from_terms(params_.mode, terms);
  }

  /// Evaluates every one of the q^(lm) forms at every point.
  SpectrumReport naive_weight_enumerator(std::uint64_t work_budget = 200'000'000) const {
    const IndexCodec codec(params_.q(), dimension());
    const BigCount work = BigCount(codec.total()) * domain_.size() * dimension();
    if (work > work_budget) throw Error(ErrorCode::BudgetExceeded, "naive enumeration needs " + work.str() + " steps");
    std::map<std::uint64_t, std::uint64_t> hist;
    std::vector<Elem> coeffs(dimension());
    for (std::uint64_t idx = 0; idx < codec.total(); ++idx) {
      codec.decode(idx, coeffs);
      std::uint64_t w = 0;
      for (std::size_t i = 0; i < domain_.size(); ++i)
        if (detail::dot(params_.field, coeffs, domain_.point_entries(i)) != 0) ++w;
      ++hist[w];
    }
    std::vector<std::pair<BigCount, BigCount>> terms;
    for (auto [w, c] : hist) terms.emplace_back(BigCount(w), BigCount(c));
    return SpectrumReport::from_terms(params_.mode, terms);
  }

  /// Support weight of the subcode spanned by the forms in `subspace`, by
  /// averaging codeword weights: ||D|| = sum_{c in D} wt(c) / (q^r - q^(r-1)).
  std::uint64_t support_weight(const SubspaceBasis& subspace) const {
    check_form_subspace(subspace);
    const std::size_t r = subspace.dim();
    if (r == 0) return 0;
    const auto& ranks = form_ranks();
    const IndexCodec codec(params_.q(), dimension());
    std::uint64_t total = 0;
    detail::for_each_span_element(params_.field, subspace.basis(),
                                  [&](std::span<const Elem> v) { total += rank_weights_[ranks[codec.encode(v)]]; });
    const BigCount q = params_.q();
    const BigCount den = big_pow(q, r) - big_pow(q, r - 1);
    return static_cast<std::uint64_t>(exact_div(BigCount(total), den, "support weight average"));
  }

  /// Support weight as the size of the union of supports of the basis codewords.
  std::uint64_t support_weight_union(const SubspaceBasis& subspace) const {
    check_form_subspace(subspace);
    std::vector<bool> support(domain_.size(), false);
    for (std::size_t i = 0; i < subspace.dim(); ++i) {
      auto row = subspace.basis().row(i);
      for (std::size_t c = 0; c < domain_.size(); ++c)
        if (!support[c] && detail::dot(params_.field, row, domain_.point_entries(c)) != 0) support[c] = true;
    }
    return static_cast<std::uint64_t>(std::count(support.begin(), support.end(), true));
  }

  /// d_r: minimum support weight over all r-dimensional subcodes. With
  /// early_exit the search stops once a subcode meets the Griesmer-Wei bound
  /// computed from the measured minimum distance.
  std::uint64_t brute_ghw(std::size_t r, const SearchOptions& options = {}) const {
    if (r < 1 || r > dimension()) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
    std::uint64_t floor = 0;
    if (options.early_exit) {
      BigCount gw = 0;
      BigCount d1 = minimum_distance();
      BigCount qj = 1;
      for (std::size_t j = 0; j < r; ++j, qj *= params_.q()) gw += ceil_div(d1, qj);
      floor = static_cast<std::uint64_t>(gw);
    }
    form_ranks();
    using Acc = std::uint64_t;
    return reduce_subspaces<Acc>(
        params_.field, dimension(), r, options.threads, std::numeric_limits<Acc>::max(),
        [&](Acc& best, const SubspaceBasis& s, std::size_t, std::uint64_t) {
          best = std::min(best, support_weight(s));
          return !(options.early_exit && best <= floor);
        },
        [](Acc& into, const Acc& part) { into = std::min(into, part); });
  }

  /// Histogram of support weights over all r-dimensional subcodes.
  std::map<std::uint64_t, std::uint64_t> subcode_spectrum(std::size_t r, const SearchOptions& options = {}) const {
    if (r < 1 || r > dimension()) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
    form_ranks();
    using Acc = std::map<std::uint64_t, std::uint64_t>;
    return reduce_subspaces<Acc>(
        params_.field, dimension(), r, options.threads, Acc{},
        [&](Acc& hist, const SubspaceBasis& s, std::size_t, std::uint64_t) {
          ++hist[support_weight(s)];
          return true;
        },
        [](Acc& into, const Acc& part) {
          for (auto [w, c] : part) into[w] += c;
        });
  }

 private:
  void check_form_subspace(const SubspaceBasis& s) const {
    if (s.ambient_dim() != dimension())
      throw Error(ErrorCode::ShapeMismatch, "subspace does not live in the form space");
  }

  struct LazyRanks {
    std::once_flag flag;
    std::vector<std::uint8_t> table;
  };

  CodeParams params_;
  EvaluationDomain domain_;
  std::vector<std::uint64_t> rank_weights_;
  std::shared_ptr<LazyRanks> form_ranks_once_ = std::make_shared<LazyRanks>();
};

}  // namespace detcode
