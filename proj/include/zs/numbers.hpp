// Exact scalar arithmetic: arbitrary-precision integers and rationals,
// factorial-family products, and the error taxonomy shared by all modules.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace zs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Caller passed a value outside an operation's contract.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is valid but the requested computation exceeds the implementation cap.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural invariant failed; indicates a bug, never a usage error.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline Int factorial(long n) {
  if (n < 0) throw domain_error("factorial: negative argument");
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact at every step
  }
  return r;
}

// (2n-1)!! with the boundary conventions (-1)!! = 1 and 1!! = 1.
inline Int double_factorial_odd(long n) {
  if (n < 0) throw domain_error("double_factorial_odd: negative argument");
  Int r = 1;
  for (long i = 1; i <= n; ++i) r *= 2 * i - 1;
  return r;
}

// (2n)!! = 2^n n!, with 0!! = 1.
inline Int double_factorial_even(long n) {
  if (n < 0) throw domain_error("double_factorial_even: negative argument");
  Int r = 1;
  for (long i = 1; i <= n; ++i) r *= 2 * i;
  return r;
}

// Odd falling double factorial ((2n-1))_t = (2n-1)(2n-3)...(2n-2t+1).
inline Int falling_odd(long n, long t) {
  if (t < 0 || t > n) throw domain_error("falling_odd: need 0 <= t <= n");
  Int r = 1;
  for (long i = 0; i < t; ++i) r *= 2 * (n - i) - 1;
  return r;
}

// Even falling double factorial ((2n))_t = (2n)(2n-2)...(2n-2t+2).
inline Int falling_even(long n, long t) {
  if (t < 0 || t > n) throw domain_error("falling_even: need 0 <= t <= n");
  Int r = 1;
  for (long i = 0; i < t; ++i) r *= 2 * (n - i);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw domain_error("pow_rat: zero to negative power");
    return 1 / pow_rat(base, -e);
  }
  Rat r = 1;
  Rat b = base;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

// Serialized as "p" when integral, else "p/q" with q > 0 and gcd(p,q) = 1
// (cpp_rational keeps values normalized).
inline std::string rat_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Int parse_int(const std::string& s) {
  if (s.empty()) throw domain_error("parse_int: empty string");
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw domain_error("parse_int: not an integer: " + s);
  }
}

inline Rat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  const Int num = parse_int(s.substr(0, slash));
  const Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw domain_error("parse_rat: zero denominator: " + s);
  return Rat(num, den);
}

inline long to_long(const Int& v) {
  if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
    throw internal_error("to_long: value out of range");
  return v.convert_to<long>();
}

}  // namespace zs
