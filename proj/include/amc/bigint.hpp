#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "amc/errors.hpp"

namespace amc {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses a base-10 integer with an optional leading '-'. No whitespace, no '+'.
inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  std::size_t i = text.front() == '-' ? 1 : 0;
  if (i == text.size()) throw ParseError("integer literal '" + std::string(text) + "' has no digits");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9')
      throw ParseError("integer literal '" + std::string(text) + "' is not decimal");
  }
  return BigInt(std::string(text));
}

/// Remainder in [0, m) for m > 0.
inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t floor_mod(const BigInt& a, std::int64_t m) {
  return static_cast<std::int64_t>(floor_mod(a, BigInt(m)));
}

/// Floor division for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b) < 0) --q;
  return q;
}

/// Ceiling division for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Largest modulus the exact tier will lift to. Residue tables are dense.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 20;

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  const std::int64_t g = gcd64(a, b);
  const BigInt l = BigInt(a / g) * b;
  if (l > kMaxModulus) throw BudgetError("common modulus " + l.str() + " exceeds the residue-table limit");
  return static_cast<std::int64_t>(l);
}

/// Converts a positive step to a machine integer, rejecting anything the residue tables cannot hold.
inline std::int64_t step_to_int(const BigInt& step) {
  if (step < 1) throw ValidationError("step must be a positive integer, got " + step.str());
  if (step > kMaxModulus) throw BudgetError("step " + step.str() + " exceeds the residue-table limit");
  return static_cast<std::int64_t>(step);
}

}  // namespace amc
