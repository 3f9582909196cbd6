#pragma once

// Closed forms for determinantal codes: weights of the rank-1 (t = 1) codes,
// the general-t weight counts via an alternating q-binomial sum, weight
// enumerators, the known part of the t = 1 weight hierarchy, and the
// Griesmer-Wei bound.

#include <cstdint>
#include <string>
#include <vector>

#include "detcode/bigcount.hpp"
#include "detcode/counting.hpp"
#include "detcode/detcode.hpp"
#include "detcode/error.hpp"
#include "detcode/matq.hpp"

namespace detcode {

namespace sources {
inline constexpr const char* kGriesmerWeiAttained = "griesmer-wei-attained";
inline constexpr const char* kGriesmerWei = "griesmer-wei";
inline constexpr const char* kRank1SpaceBound = "rank1-space-bound";
inline constexpr const char* kWitnessSubcode = "witness-subcode";
inline constexpr const char* kMonotonicity = "monotonicity";
inline constexpr const char* kFullSupport = "full-support";
}  // namespace sources

namespace detail {

inline void check_shape(std::int64_t l, std::int64_t m, std::uint64_t q) { CountParams(q, l, m); }

inline BigCount q_pow(std::uint64_t q, std::int64_t e) { return big_pow(BigCount(q), static_cast<std::uint64_t>(e)); }

// (q^r - 1)/(q - 1)
inline BigCount q_number(std::uint64_t q, std::int64_t r) { return exact_div(q_pow(q, r) - 1, BigCount(q - 1), "q-number"); }

}  // namespace detail

/// Nonzero weights of the projective t = 1 code: q^(l+m-r-1) (q^r - 1)/(q - 1).
inline BigCount what_r(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  detail::check_shape(l, m, q);
  if (r < 1 || r > l) throw Error(ErrorCode::BadParameters, "need 1 <= r <= l");
  return detail::q_pow(q, l + m - r - 1) * detail::q_number(q, r);
}

/// All t = 1 projective weights for r = 1..l; they increase strictly.
inline std::vector<BigCount> t1_weights(std::int64_t l, std::int64_t m, std::uint64_t q) {
  std::vector<BigCount> out;
  for (std::int64_t r = 1; r <= l; ++r) {
    out.push_back(what_r(l, m, r, q));
    if (out.size() > 1 && !(out[out.size() - 2] < out.back()))
      throw Error(ErrorCode::InternalFormulaMismatch, "t = 1 weights are not strictly increasing");
  }
  return out;
}

/// Number of l x m matrices of rank t with tau_r(M) != 0, by the alternating
/// q-binomial sum; out-of-range binomials vanish.
inline BigCount delsarte_N(std::int64_t t, std::int64_t r, std::int64_t l, std::int64_t m, std::uint64_t q) {
  detail::check_shape(l, m, q);
  if (t < 0 || t > l || r < 0 || r > l) throw Error(ErrorCode::BadParameters, "need 0 <= t, r <= l");
  BigCount sum = 0;
  for (std::int64_t i = 0; i <= l; ++i) {
    const BigCount b1 = gaussian_binomial(l - i, l - t, q);
    if (b1 == 0) continue;
    const BigCount b2 = gaussian_binomial(l - r, i, q);
    if (b2 == 0) continue;
    const std::int64_t d = t - i;
    const std::uint64_t exponent = static_cast<std::uint64_t>(i * m) + static_cast<std::uint64_t>(d * (d - 1) / 2);
    BigCount term = big_pow(BigCount(q), exponent) * b1 * b2;
    if (((t - i) % 2 + 2) % 2 == 1) term = -term;
    sum += term;
  }
  const BigCount inner = mu(l, m, t, q) - sum;
  return exact_div(BigCount(q - 1) * inner, BigCount(q), "alternating rank-count sum");
}

/// Per-rank weights: affine w_r = sum_{s=1..t} N_s(r), projective w_r/(q-1).
struct WeightTable {
  std::vector<BigCount> affine;
  std::vector<BigCount> projective;

  const std::vector<BigCount>& in(Mode mode) const { return mode == Mode::affine ? affine : projective; }
};

inline WeightTable weight_table(std::int64_t t, std::int64_t l, std::int64_t m, std::uint64_t q) {
  detail::check_shape(l, m, q);
  if (t < 1 || t > l) throw Error(ErrorCode::BadParameters, "need 1 <= t <= l");
  WeightTable out;
  for (std::int64_t r = 0; r <= l; ++r) {
    BigCount w = 0;
    for (std::int64_t s = 1; s <= t; ++s) w += delsarte_N(s, r, l, m, q);
    out.projective.push_back(exact_div(w, BigCount(q - 1), "projective weight"));
    out.affine.push_back(std::move(w));
  }
  return out;
}

/// Weight enumerator from closed forms only: sum_r mu_r Z^{w_r}, equal weights merged.
inline SpectrumReport closed_weight_enumerator(std::int64_t t, std::int64_t l, std::int64_t m, std::uint64_t q,
                                               Mode mode) {
  const WeightTable table = weight_table(t, l, m, q);
  std::vector<std::pair<BigCount, BigCount>> terms;
  for (std::int64_t r = 0; r <= l; ++r) terms.emplace_back(table.in(mode)[r], mu(l, m, r, q));
  return SpectrumReport::from_terms(mode, terms);
}

/// sum_{j<r} ceil(d1 / q^j).
inline BigCount griesmer_wei(const BigCount& d1, std::int64_t r, std::uint64_t q) {
  if (d1 < 1 || r < 1) throw Error(ErrorCode::BadParameters, "need d1 >= 1 and r >= 1");
  BigCount sum = 0;
  BigCount qj = 1;
  for (std::int64_t j = 0; j < r; ++j, qj *= q) sum += ceil_div(d1, qj);
  return sum;
}

struct GhwResult {
  enum class Kind { exact, bounds };

  std::int64_t r = 0;
  Kind kind = Kind::exact;
  BigCount value = 0;  // exact
  BigCount lower = 0;  // bounds
  BigCount upper = 0;
  std::string source;

  static GhwResult exact(std::int64_t r, BigCount v, std::string src) {
    GhwResult g;
    g.r = r;
    g.kind = Kind::exact;
    g.value = v;
    g.lower = v;
    g.upper = std::move(v);
    g.source = std::move(src);
    return g;
  }

  bool is_exact() const noexcept { return kind == Kind::exact; }
  bool contains(const BigCount& v) const { return lower <= v && v <= upper; }
  bool operator==(const GhwResult&) const = default;
};

namespace detail {

// q^(l+m-r-1) ((q^r-1)/(q-1) + q^(r-2) - 1), rounded up when the power is negative.
inline BigCount rank1_space_lower_bound(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  const BigCount inner = q_number(q, r) + q_pow(q, r - 2) - 1;
  const std::int64_t e = l + m - r - 1;
  if (e >= 0) return q_pow(q, e) * inner;
  return ceil_div(inner, q_pow(q, -e));
}

// Support weight of the subcode spanned by X_11..X_1m, X_21..X_(s+1)1.
inline BigCount witness_upper_bound(std::int64_t l, std::int64_t m, std::int64_t s, std::uint64_t q) {
  return q_pow(q, l - 1) * q_number(q, m) + q_pow(q, l + m - s - 2) * q_number(q, s);
}

}  // namespace detail

/// Exact value of, or proven bounds on, the r-th generalized Hamming weight of
/// the projective t = 1 code.
inline GhwResult ghw_t1(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  detail::check_shape(l, m, q);
  if (r < 1 || r > l * m) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
  const BigCount n_hat = lengths(l, m, 1, q).n_hat;
  if (r <= m) return GhwResult::exact(r, detail::q_pow(q, l + m - r - 1) * detail::q_number(q, r), sources::kGriesmerWeiAttained);
  if (r == l * m) return GhwResult::exact(r, n_hat, sources::kFullSupport);
  const BigCount d_m = detail::q_pow(q, l - 1) * detail::q_number(q, m);
  const BigCount d_m1 = d_m + detail::q_pow(q, l + m - 3);
  if (r == m + 1) return GhwResult::exact(r, d_m1, sources::kRank1SpaceBound);

  struct Candidate {
    BigCount value;
    const char* source;
  };
  const std::vector<Candidate> lowers = {
      {griesmer_wei(detail::q_pow(q, l + m - 2), r, q), sources::kGriesmerWei},
      {detail::rank1_space_lower_bound(l, m, r, q), sources::kRank1SpaceBound},
      {d_m1 + (r - m - 1), sources::kMonotonicity},
  };
  std::vector<Candidate> uppers = {
      {n_hat - (l * m - r), sources::kMonotonicity},
      {n_hat, sources::kFullSupport},
  };
  if (r < l + m) uppers.insert(uppers.begin(), {detail::witness_upper_bound(l, m, r - m, q), sources::kWitnessSubcode});

  const Candidate* lo = &lowers.front();
  for (const auto& c : lowers)
    if (c.value > lo->value) lo = &c;
  const Candidate* hi = &uppers.front();
  for (const auto& c : uppers)
    if (c.value < hi->value) hi = &c;
  if (lo->value > hi->value)
    throw Error(ErrorCode::InternalFormulaMismatch, "ghw bounds cross at r=" + std::to_string(r));
  if (lo->value == hi->value)
    return GhwResult::exact(r, lo->value, std::string(lo->source) + "+" + hi->source);
  GhwResult g;
  g.r = r;
  g.kind = GhwResult::Kind::bounds;
  g.lower = lo->value;
  g.upper = hi->value;
  g.source = std::string(lo->source) + "/" + hi->source;
  return g;
}

/// Explicit r-dimensional subspace of forms realising the known upper bounds:
/// X_11..X_1r for r <= m, then X_21..X_(s+1)1 appended for r = m + s.
inline SubspaceBasis witness_subcode(std::int64_t l, std::int64_t m, std::int64_t r) {
  if (l < 1 || l > m) throw Error(ErrorCode::BadParameters, "need 1 <= l <= m");
  if (r < 1 || r >= l + m) throw Error(ErrorCode::BadParameters, "need 1 <= r < l + m");
  std::vector<std::size_t> positions;
  for (std::int64_t j = 0; j < std::min(r, m); ++j) positions.push_back(static_cast<std::size_t>(j));
  for (std::int64_t i = 1; i <= r - m; ++i) positions.push_back(static_cast<std::size_t>(i * m));
  const std::size_t n = static_cast<std::size_t>(l * m);
  Matrix basis(positions.size(), n);
  for (std::size_t k = 0; k < positions.size(); ++k) basis(k, positions[k]) = 1;
  return SubspaceBasis::from_rref(std::move(basis), positions);
}

/// Support weight the witness subcode is known to have.
inline BigCount witness_support_weight(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  detail::check_shape(l, m, q);
  if (r < 1 || r >= l + m) throw Error(ErrorCode::BadParameters, "need 1 <= r < l + m");
  if (r <= m) return detail::q_pow(q, l + m - r - 1) * detail::q_number(q, r);
  return detail::witness_upper_bound(l, m, r - m, q);
}

/// Lower bound on the minimum distance of the projective code for t = l-1,
/// m = l (the determinant hypersurface), from the point count of its
/// hyperplane sections.
inline BigCount serre_example_bound(std::int64_t l, std::uint64_t q) {
  if (l < 2) throw Error(ErrorCode::BadParameters, "need l >= 2");
  const std::int64_t l2 = l * l;
  BigCount gl_part = detail::q_pow(q, l * (l - 1) / 2);
  for (std::int64_t i = 2; i <= l; ++i) gl_part *= detail::q_pow(q, i) - 1;
  return detail::q_pow(q, l2 - 1) + detail::q_pow(q, l2 - 2) - BigCount(l - 1) * detail::q_pow(q, l2 - 3) - gl_part;
}

}  // namespace detcode
