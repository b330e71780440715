#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "splicetype/error.hpp"

namespace splicetype {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// n/d; the two-argument cpp_rational constructor rejects negative d.
inline Rational make_rational(BigInt n, BigInt d) {
  if (d == 0) throw Error(ErrorCode::InvariantViolation, "zero denominator");
  if (d < 0) n = -n, d = -d;
  return Rational(n, d);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) {
    return boost::multiprecision::numerator(x).str();
  }
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

inline bool is_integral(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline BigInt numerator_of(const Rational& x) {
  return boost::multiprecision::numerator(x);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline BigInt abs(const BigInt& a) { return boost::multiprecision::abs(a); }

// Floor division for signed operands (C++ division truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  return -floor_div(-a, b);
}

// Least nonnegative residue.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

// Inverse of a modulo m (m >= 1); throws NotCoprime when gcd(a, m) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt old_r = mod_floor(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NotCoprime,
                to_string(a) + " is not invertible modulo " + to_string(m));
  }
  return mod_floor(old_s, m);
}

inline std::int64_t to_int64(const BigInt& x, const char* what = "value") {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::InputTooLarge,
                std::string(what) + " does not fit in 64 bits: " + to_string(x));
  }
  return static_cast<std::int64_t>(x);
}

inline std::uint64_t to_uint64(const BigInt& x, const char* what = "value") {
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::InputTooLarge,
                std::string(what) + " is not a 64-bit unsigned value: " + to_string(x));
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace splicetype
