#pragma once

// Exact closed-form counts over GF(q): Gaussian binomials, the number of
// l x m matrices of each rank, code lengths, and the rank-1 count bound for
// linear spaces of matrices. No floating point anywhere.

#include <cstdint>
#include <string>
#include <utility>

#include "detcode/bigcount.hpp"
#include "detcode/error.hpp"

namespace detcode {

inline bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  while (q % p == 0) q /= p;
  return q == 1;
}

/// q, l, m with l <= m; the standing normalisation of the matrix shape.
struct CountParams {
  std::uint64_t q;
  std::int64_t l;
  std::int64_t m;

  CountParams(std::uint64_t q_, std::int64_t l_, std::int64_t m_) : q(q_), l(l_), m(m_) {
    if (!is_prime_power(q)) throw Error(ErrorCode::BadParameters, std::to_string(q) + " is not a prime power");
    if (l < 1 || l > m) throw Error(ErrorCode::BadParameters, "need 1 <= l <= m (transpose first)");
  }
};

/// [n k]_q by the product formula; 0 when k < 0 or k > n.
inline BigCount gaussian_binomial(std::int64_t n, std::int64_t k, std::uint64_t q) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigCount num = 1;
  BigCount den = 1;
  const BigCount Q(q);
  for (std::int64_t i = 0; i < k; ++i) {
    num *= big_pow(Q, static_cast<std::uint64_t>(n - i)) - 1;
    den *= big_pow(Q, static_cast<std::uint64_t>(i + 1)) - 1;
  }
  return exact_div(num, den, "gaussian_binomial");
}

namespace detail {

inline std::uint64_t choose2(std::int64_t j) { return static_cast<std::uint64_t>(j * (j - 1) / 2); }

// q^C(r,2) prod_{i<r} (q^{l-i}-1)(q^{m-i}-1)/(q^{i+1}-1)
inline BigCount mu_product_form(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  if (r > l || r > m) return 0;
  const BigCount Q(q);
  BigCount num = big_pow(Q, choose2(r));
  BigCount den = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    num *= (big_pow(Q, static_cast<std::uint64_t>(l - i)) - 1) * (big_pow(Q, static_cast<std::uint64_t>(m - i)) - 1);
    den *= big_pow(Q, static_cast<std::uint64_t>(i + 1)) - 1;
  }
  return exact_div(num, den, "mu product form");
}

// [b r]_q prod_{i<r} (q^a - q^i)
inline BigCount mu_bracket_form(std::int64_t a, std::int64_t b, std::int64_t r, std::uint64_t q) {
  if (r > a) return 0;
  const BigCount Q(q);
  BigCount out = gaussian_binomial(b, r, q);
  for (std::int64_t i = 0; i < r; ++i)
    out *= big_pow(Q, static_cast<std::uint64_t>(a)) - big_pow(Q, static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace detail

/// Number of l x m matrices over GF(q) of rank r. All three classical forms
/// are evaluated and must agree.
inline BigCount mu(std::int64_t l, std::int64_t m, std::int64_t r, std::uint64_t q) {
  if (l < 0 || m < 0 || r < 0) throw Error(ErrorCode::BadParameters, "mu needs nonnegative l, m, r");
  if (q < 2) throw Error(ErrorCode::BadParameters, "q must be >= 2");
  const BigCount a = detail::mu_product_form(l, m, r, q);
  const BigCount b = detail::mu_bracket_form(l, m, r, q);  // row spaces
  const BigCount c = detail::mu_bracket_form(m, l, r, q);  // column spaces
  if (a != b || a != c) {
    throw Error(ErrorCode::InternalFormulaMismatch,
                "mu(" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(r) + ") forms disagree: " +
                    a.str() + ", " + b.str() + ", " + c.str());
  }
  return a;
}

/// Number of projective points of rank j: mu_j / (q - 1), evaluated from its own formula.
inline BigCount mu_hat(std::int64_t l, std::int64_t m, std::int64_t j, std::uint64_t q) {
  if (j < 1) throw Error(ErrorCode::BadParameters, "mu_hat needs j >= 1");
  if (j > l || j > m) return 0;
  const BigCount Q(q);
  BigCount num = big_pow(Q, detail::choose2(j));
  BigCount den = Q - 1;
  for (std::int64_t i = 0; i < j; ++i) {
    num *= (big_pow(Q, static_cast<std::uint64_t>(l - i)) - 1) * (big_pow(Q, static_cast<std::uint64_t>(m - i)) - 1);
    den *= big_pow(Q, static_cast<std::uint64_t>(i + 1)) - 1;
  }
  return exact_div(num, den, "mu_hat");
}

struct Lengths {
  BigCount n;      // affine: |D_t|
  BigCount n_hat;  // projective: number of points of D_t in P^{lm-1}
};

inline Lengths lengths(std::int64_t l, std::int64_t m, std::int64_t t, std::uint64_t q) {
  const CountParams params(q, l, m);
  if (t < 1 || t > l) throw Error(ErrorCode::BadParameters, "need 1 <= t <= l");
  Lengths out;
  out.n_hat = 0;
  for (std::int64_t j = 1; j <= t; ++j) out.n_hat += mu_hat(l, m, j, q);
  out.n = 1 + out.n_hat * (q - 1);
  BigCount direct = 0;
  for (std::int64_t j = 0; j <= t; ++j) direct += mu(l, m, j, q);
  if (direct != out.n)
    throw Error(ErrorCode::InternalFormulaMismatch, "n = 1 + n_hat(q-1) fails: " + out.n.str() + " vs " + direct.str());
  return out;
}

/// Largest number of rank-1 matrices an r-dimensional space of l x m matrices
/// can hold, and the matching least number of elements of rank >= 2.
struct Rank1Bound {
  BigCount max_rank1;
  BigCount min_higher_rank;
  bool hypothesis_holds;  // r > m; otherwise a constant-rank-1 space reaches q^r - 1
};

inline Rank1Bound rank1_bound(std::int64_t r, std::int64_t l, std::int64_t m, std::uint64_t q) {
  const CountParams params(q, l, m);
  if (l < 2) throw Error(ErrorCode::BadParameters, "rank-1 bound needs l >= 2");
  if (r < 1 || r > l * m) throw Error(ErrorCode::BadParameters, "need 1 <= r <= lm");
  const BigCount Q(q);
  Rank1Bound out;
  if (r > m) {
    out.max_rank1 = big_pow(Q, static_cast<std::uint64_t>(r - 1)) + Q * Q - Q - 1;
    out.min_higher_rank = (big_pow(Q, static_cast<std::uint64_t>(r - 1)) - Q) * (Q - 1);
    out.hypothesis_holds = true;
  } else {
    out.max_rank1 = big_pow(Q, static_cast<std::uint64_t>(r)) - 1;
    out.min_higher_rank = 0;
    out.hypothesis_holds = false;
  }
  return out;
}

}  // namespace detcode
