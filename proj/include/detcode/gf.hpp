#pragma once

// Finite fields GF(p^e) with elements encoded as integers 0..q-1. The base-p
// digits of an index (constant term least significant) are the coefficients of
// the polynomial representative modulo a fixed monic irreducible.

#include <charconv>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "detcode/error.hpp"

namespace detcode {

using Elem = std::uint16_t;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as little-endian coefficient vectors without trailing zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int result = 1;
  int base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// Remainder of a modulo b (b nonzero).
inline Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const int factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly digits_of(std::uint64_t value, int p, int count) {
  Poly out(count, 0);
  for (int i = 0; i < count; ++i) {
    out[i] = static_cast<int>(value % p);
    value /= p;
  }
  return out;
}

inline bool is_irreducible(const Poly& f, int p) {
  const int degree = static_cast<int>(f.size()) - 1;
  // A reducible polynomial has a monic factor of degree at most degree/2.
  for (int d = 1; d <= degree / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = digits_of(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct FieldTables {
  int p = 0;
  int e = 0;
  std::uint32_t q = 0;
  std::vector<int> modulus;
  std::vector<std::uint32_t> p_powers;
  std::vector<Elem> neg;
  std::vector<Elem> exp;            // exp[i] = g^i for i in [0, 2(q-1))
  std::vector<std::uint32_t> log;   // log[0] unused
  std::vector<Elem> add_table;      // q*q, only for small extension fields
};

}  // namespace detail

class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// GF(p^e). The modulus is the monic irreducible of degree e whose
  /// coefficient tuple, read as a base-p integer, is smallest.
  Field(int p, int e) {
    if (e < 1) throw Error(ErrorCode::DegreeZero, "extension degree must be >= 1");
    if (p < 2 || !detail::is_prime(static_cast<std::uint64_t>(p)))
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (q > kMaxOrder)
        throw Error(ErrorCode::FieldTooLarge,
                    std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^16");
    }
    auto t = std::make_shared<detail::FieldTables>();
    t->p = p;
    t->e = e;
    t->q = static_cast<std::uint32_t>(q);
    t->p_powers.resize(e + 1);
    t->p_powers[0] = 1;
    for (int i = 1; i <= e; ++i) t->p_powers[i] = t->p_powers[i - 1] * p;

    if (e == 1) {
      t->modulus = {p - 1, 1};  // X - 1, unused for prime fields
    } else {
      for (std::uint32_t low = 0; low < t->q; ++low) {
        detail::Poly f = detail::digits_of(low, p, e);
        f.push_back(1);
        if (detail::is_irreducible(f, p)) {
          t->modulus = std::move(f);
          break;
        }
      }
    }

    t->neg.resize(t->q);
    for (std::uint32_t a = 0; a < t->q; ++a) {
      std::uint32_t out = 0;
      for (int i = 0; i < e; ++i) {
        const std::uint32_t d = (a / t->p_powers[i]) % p;
        out += ((p - d) % p) * t->p_powers[i];
      }
      t->neg[a] = static_cast<Elem>(out);
    }
    if (e > 1 && p != 2 && t->q <= 256) {
      t->add_table.resize(static_cast<std::size_t>(t->q) * t->q);
      for (std::uint32_t a = 0; a < t->q; ++a)
        for (std::uint32_t b = 0; b < t->q; ++b)
          t->add_table[a * t->q + b] = add_digits(*t, static_cast<Elem>(a), static_cast<Elem>(b));
    }
    tables_ = std::move(t);
    build_log_tables();
  }

  int characteristic() const noexcept { return tables_->p; }
  int degree() const noexcept { return tables_->e; }
  std::uint32_t order() const noexcept { return tables_->q; }
  const std::vector<int>& modulus() const noexcept { return tables_->modulus; }

  bool operator==(const Field& other) const noexcept {
    return tables_ == other.tables_ ||
           (tables_->p == other.tables_->p && tables_->e == other.tables_->e);
  }

  bool contains(std::uint64_t index) const noexcept { return index < tables_->q; }

  Elem add(Elem a, Elem b) const noexcept {
    const auto& t = *tables_;
    if (t.p == 2) return static_cast<Elem>(a ^ b);
    if (t.e == 1) {
      const std::uint32_t s = static_cast<std::uint32_t>(a) + b;
      return static_cast<Elem>(s >= t.q ? s - t.q : s);
    }
    if (!t.add_table.empty()) return t.add_table[static_cast<std::size_t>(a) * t.q + b];
    return add_digits(t, a, b);
  }

  Elem neg(Elem a) const noexcept { return tables_->neg[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    const auto& t = *tables_;
    if (t.e == 1) return static_cast<Elem>(static_cast<std::uint32_t>(a) * b % t.q);
    return t.exp[t.log[a] + t.log[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    const auto& t = *tables_;
    return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^n; negative exponents go through the inverse.
  Elem pow(Elem a, std::int64_t n) const {
    if (n < 0) return pow(inv(a), -n);
    if (a == 0) return n == 0 ? 1 : 0;
    const auto& t = *tables_;
    const std::uint64_t order = t.q - 1;
    const std::uint64_t k = (static_cast<std::uint64_t>(t.log[a]) * (static_cast<std::uint64_t>(n) % order)) % order;
    return t.exp[k];
  }

  /// Multiplication by schoolbook polynomial product and reduction modulo the
  /// modulus. The table-driven mul() must agree with this everywhere.
  Elem mul_poly(Elem a, Elem b) const {
    const auto& t = *tables_;
    const int p = t.p;
    if (t.e == 1) return static_cast<Elem>(static_cast<std::uint32_t>(a) * b % t.q);
    detail::Poly pa = detail::digits_of(a, p, t.e);
    detail::Poly pb = detail::digits_of(b, p, t.e);
    detail::Poly prod(2 * t.e, 0);
    for (int i = 0; i < t.e; ++i)
      for (int j = 0; j < t.e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    detail::Poly r = detail::poly_mod(prod, t.modulus, p);
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < r.size(); ++i) out += static_cast<std::uint32_t>(r[i]) * t.p_powers[i];
    return static_cast<Elem>(out);
  }

  /// Generator of the multiplicative group used by the log tables.
  Elem primitive_element() const noexcept { return tables_->exp[1]; }

  std::string name() const {
    if (degree() == 1) return "GF(" + std::to_string(order()) + ")";
    return "GF(" + std::to_string(characteristic()) + "^" + std::to_string(degree()) + ")";
  }

 private:
  static Elem add_digits(const detail::FieldTables& t, Elem a, Elem b) noexcept {
    std::uint32_t out = 0;
    std::uint32_t x = a;
    std::uint32_t y = b;
    for (int i = 0; i < t.e; ++i) {
      const std::uint32_t d = (x % t.p + y % t.p) % t.p;
      out += d * t.p_powers[i];
      x /= t.p;
      y /= t.p;
    }
    return static_cast<Elem>(out);
  }

  void build_log_tables() {
    auto t = std::const_pointer_cast<detail::FieldTables>(tables_);
    const std::uint32_t q = t->q;
    const std::uint32_t order = q - 1;
    t->exp.assign(2 * static_cast<std::size_t>(order) + 1, 0);
    t->log.assign(q, 0);
    for (std::uint32_t g = 1; g < q; ++g) {
      Elem x = 1;
      std::uint32_t k = 0;
      bool primitive = true;
      for (k = 0; k < order; ++k) {
        if (k > 0 && x == 1) {
          primitive = false;
          break;
        }
        t->exp[k] = x;
        x = mul_poly(x, static_cast<Elem>(g));
      }
      if (primitive && x == 1) break;
    }
    for (std::uint32_t k = 0; k < order; ++k) {
      t->log[t->exp[k]] = k;
      t->exp[k + order] = t->exp[k];
    }
    t->exp[2 * static_cast<std::size_t>(order)] = t->exp[0];
  }

  std::shared_ptr<const detail::FieldTables> tables_;
};

inline Field make_field(int p, int e) { return Field(p, e); }

/// The field of order q; rejects q that is not a prime power.
inline Field field_of_order(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power >= 2");
  if (q > Field::kMaxOrder) throw Error(ErrorCode::FieldTooLarge, std::to_string(q) + " exceeds 2^16");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return Field(static_cast<int>(p), e);
}

/// Accepts "q" or "p^e".
inline Field parse_field(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorCode::ParseError, "bad field order '" + std::string(text) + "'");
    return value;
  };
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return field_of_order(parse_int(text));
  const std::uint64_t p = parse_int(text.substr(0, caret));
  const std::uint64_t e = parse_int(text.substr(caret + 1));
  if (p > Field::kMaxOrder) throw Error(ErrorCode::FieldTooLarge, std::string(text));
  if (e > 64) throw Error(ErrorCode::FieldTooLarge, std::string(text));
  return Field(static_cast<int>(p), static_cast<int>(e));
}

/// A field element bound to its field; mixing fields is an error.
class FieldElement {
 public:
  FieldElement(Field field, std::uint64_t index) : field_(std::move(field)) {
    if (!field_.contains(index))
      throw Error(ErrorCode::IndexOutOfRange,
                  std::to_string(index) + " is not an element of " + field_.name());
    index_ = static_cast<Elem>(index);
  }

  const Field& field() const noexcept { return field_; }
  Elem index() const noexcept { return index_; }
  bool is_zero() const noexcept { return index_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.index_, b.index_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.index_, b.index_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.index_, b.index_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.div(a.index_, b.index_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(index_)}; }
  FieldElement inv() const { return {field_, field_.inv(index_)}; }
  FieldElement pow(std::int64_t n) const { return {field_, field_.pow(index_, n)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }

  std::string to_string() const { return std::to_string(index_); }

  static FieldElement parse(const Field& field, std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      throw Error(ErrorCode::ParseError, "bad element '" + std::string(text) + "'");
    return {field, value};
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_))
      throw Error(ErrorCode::FieldMismatch, a.field_.name() + " vs " + b.field_.name());
  }

  Field field_;
  Elem index_ = 0;
};

}  // namespace detcode
