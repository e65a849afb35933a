#pragma once

// Exact rational scalars (GMP) plus the few helpers the certificates need.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dcsharp {

using Rational = mpq_class;
using Integer = mpz_class;

Integer factorial_integer(unsigned long n);
Rational factorial(unsigned long n);
Rational pow(const Rational& base, unsigned long exponent);

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double x);

/// Natural log of |x| without overflow, for x != 0.
double log_abs(const Rational& x);
double log_abs(const Integer& x);

/// Closed rational interval [lo, hi].
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval point(const Rational& x) { return {x, x}; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational width() const { return hi - lo; }
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
/// Scale by a rational of either sign.
RationalInterval scale(const RationalInterval& a, const Rational& s);
/// Tight enclosure of x^2 (handles intervals straddling zero).
RationalInterval square(const RationalInterval& a);
/// a^n for a strictly positive interval.
RationalInterval pow_positive(const RationalInterval& a, unsigned long n);
/// 1/a for an interval not containing zero.
RationalInterval reciprocal(const RationalInterval& a);

/// Enclosure of sqrt(x) for x >= 0 with width at most 2^-bits * (1 + sqrt(x)).
/// Degenerates to a point when x is a perfect rational square.
RationalInterval sqrt_enclosure(const Rational& x, unsigned bits = 256);

std::string to_string(const Rational& x);

}  // namespace dcsharp
