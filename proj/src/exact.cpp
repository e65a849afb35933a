#include "dcsharp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dcsharp/errors.hpp"

namespace dcsharp {

Integer factorial_integer(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational factorial(unsigned long n) { return Rational(factorial_integer(n)); }

Rational pow(const Rational& base, unsigned long exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("to_rational: non-finite input");
  Rational out;
  mpq_set_d(out.get_mpq_t(), x);
  return out;
}

double log_abs(const Integer& x) {
  if (x == 0) throw DomainError("log_abs: zero");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const Rational& x) {
  if (x == 0) throw DomainError("log_abs: zero");
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(std::fabs(mn) / md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval scale(const RationalInterval& a, const Rational& s) {
  if (s >= 0) return {a.lo * s, a.hi * s};
  return {a.hi * s, a.lo * s};
}

RationalInterval square(const RationalInterval& a) {
  Rational l2 = a.lo * a.lo;
  Rational h2 = a.hi * a.hi;
  if (a.contains_zero()) return {Rational(0), std::max(l2, h2)};
  return {std::min(l2, h2), std::max(l2, h2)};
}

RationalInterval pow_positive(const RationalInterval& a, unsigned long n) {
  if (a.lo <= 0) throw DomainError("pow_positive: interval not strictly positive");
  return {pow(a.lo, n), pow(a.hi, n)};
}

RationalInterval reciprocal(const RationalInterval& a) {
  if (a.contains_zero()) throw DomainError("reciprocal: interval contains zero");
  return {1 / a.hi, 1 / a.lo};
}

namespace {

// floor(sqrt(n)) and whether it is exact.
std::pair<Integer, bool> isqrt(const Integer& n) {
  Integer root;
  Integer rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  return {root, rem == 0};
}

}  // namespace

RationalInterval sqrt_enclosure(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("sqrt_enclosure: negative input");
  if (x == 0) return RationalInterval::point(Rational(0));
  auto [num_root, num_exact] = isqrt(Integer(x.get_num()));
  auto [den_root, den_exact] = isqrt(Integer(x.get_den()));
  if (num_exact && den_exact) return RationalInterval::point(Rational(num_root, den_root));
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits before the integer root.
  Integer scaled = Integer(x.get_num()) * Integer(x.get_den());
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  auto [root, exact] = isqrt(scaled);
  Integer denom = Integer(x.get_den());
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  Rational lo(root, denom);
  lo.canonicalize();
  if (exact) return RationalInterval::point(lo);
  Rational hi(root + 1, denom);
  hi.canonicalize();
  return {lo, hi};
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace dcsharp
