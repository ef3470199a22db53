#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "powerfree/errors.hpp"

namespace powerfree {

// Unbounded integers and fractions back every count and exponent comparison;
// no float ever decides a verdict.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

// Smallest k >= 0 with k^a >= x.  Bit-level binary search; exact.
inline BigInt iroot_ceil(const BigInt& x, unsigned a) {
  if (a == 0) fail(Errc::bad_input, "zeroth root");
  if (x <= 0) return 0;
  BigInt lo = 0, hi = 1;
  while (ipow(hi, a) < x) hi <<= 1;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (ipow(mid, a) >= x) hi = mid; else lo = mid + 1;
  }
  return lo;
}

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) fail(Errc::bad_input, "zero denominator");
  return Rational(num, den);
}

// Accepts "p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt p(text.substr(0, slash));
    BigInt q(text.substr(slash + 1));
    return make_rational(p, q);
  } catch (const std::runtime_error& e) {
    fail(Errc::bad_input, "cannot parse rational '" + text + "'");
  }
}

inline std::string to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// First convergent p/q of the continued fraction of sqrt(m) with
// p^2 - m q^2 = 1, composed with itself `sharpen` times.  Every returned
// fraction satisfies p/q > sqrt(m) exactly (m must not be a perfect square).
inline Rational sqrt_upper_rational(unsigned m, int sharpen = 2) {
  BigInt a0 = iroot_ceil(BigInt(m), 2);
  if (a0 * a0 == m) fail(Errc::bad_input, "perfect square");
  a0 -= 1;  // floor of sqrt(m)
  // Continued-fraction expansion until the Pell equation is satisfied.
  BigInt mm = 0, dd = 1, aa = a0;
  BigInt h0 = 1, h1 = a0, k0 = 0, k1 = 1;
  while (h1 * h1 - m * k1 * k1 != 1) {
    mm = dd * aa - mm;
    dd = (m - mm * mm) / dd;
    aa = (a0 + mm) / dd;
    BigInt h2 = aa * h1 + h0, k2 = aa * k1 + k0;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
  }
  BigInt p = h1, q = k1;
  for (int i = 0; i < sharpen; ++i) {
    // (p,q) -> (p^2 + m q^2, 2 p q) stays on the Pell curve.
    BigInt p2 = p * p + m * q * q;
    q = 2 * p * q;
    p = p2;
  }
  return make_rational(p, q);
}

}  // namespace powerfree
