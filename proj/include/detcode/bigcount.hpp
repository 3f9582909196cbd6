#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "detcode/error.hpp"

namespace detcode {

/// Exact integer used for every count and closed-form value.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount big_pow(const BigCount& base, std::uint64_t exponent) {
  BigCount result = 1;
  BigCount b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline BigCount big_pow(std::uint64_t base, std::uint64_t exponent) {
  return big_pow(BigCount(base), exponent);
}

/// Division that must be exact; a remainder means a formula was mistranscribed.
inline BigCount exact_div(const BigCount& num, const BigCount& den, const char* context) {
  if (den == 0) throw Error(ErrorCode::NonIntegerDivision, std::string(context) + ": division by zero");
  BigCount quotient;
  BigCount remainder;
  boost::multiprecision::divide_qr(num, den, quotient, remainder);
  if (remainder != 0) {
    throw Error(ErrorCode::NonIntegerDivision,
                std::string(context) + ": " + num.str() + " is not divisible by " + den.str());
  }
  return quotient;
}

/// Ceiling of num/den for nonnegative num and positive den.
inline BigCount ceil_div(const BigCount& num, const BigCount& den) {
  BigCount quotient;
  BigCount remainder;
  boost::multiprecision::divide_qr(num, den, quotient, remainder);
  if (remainder != 0) quotient += 1;
  return quotient;
}

inline std::string to_decimal(const BigCount& value) { return value.str(); }

inline BigCount parse_decimal(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty decimal string");
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size()) throw Error(ErrorCode::ParseError, "bad decimal string '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw Error(ErrorCode::ParseError, "bad decimal string '" + text + "'");
  }
  return BigCount(text);
}

inline bool fits_u64(const BigCount& value) {
  return value >= 0 && value <= BigCount(std::numeric_limits<std::uint64_t>::max());
}

}  // namespace detcode
