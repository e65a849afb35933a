#include <cmath>
#include <random>

#include "doctest.h"
#include "dcsharp/exact.hpp"
#include "dcsharp/finite_difference.hpp"
#include "dcsharp/jet2.hpp"
#include "dcsharp/log_magnitude.hpp"

using namespace dcsharp;

TEST_CASE("log magnitude arithmetic matches doubles in range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    const auto la = LogMagnitude::from_double(a), lb = LogMagnitude::from_double(b);
    CHECK((la * lb).to_double() == doctest::Approx(a * b).epsilon(1e-12));
    CHECK((la / lb).to_double() == doctest::Approx(a / b).epsilon(1e-12));
    CHECK((la + lb).to_double() == doctest::Approx(a + b).epsilon(1e-9).scale(100));
    CHECK((la - lb).to_double() == doctest::Approx(a - b).epsilon(1e-9).scale(100));
    CHECK(((la <=> lb) == (a <=> b)));
  }
}

TEST_CASE("log magnitude survives overflow") {
  // 1000! overflows double; log stays exact to rounding.
  LogMagnitude f = LogMagnitude::one();
  for (int k = 2; k <= 1000; ++k) f *= LogMagnitude::from_double(k);
  CHECK(f.log_abs() == doctest::Approx(std::lgamma(1001.0)).epsilon(1e-13));
  CHECK(std::isinf(f.to_double()));
  const auto sum = f + f;
  CHECK(sum.log_abs() == doctest::Approx(f.log_abs() + std::log(2.0)).epsilon(1e-14));
  CHECK((f - f).is_zero());
  CHECK(LogMagnitude::from_double(8).root(3).to_double() == doctest::Approx(2.0));
  CHECK(LogMagnitude::from_double(-2).pow(3).to_double() == doctest::Approx(-8));
}

TEST_CASE("log_sum_exp is stable at extreme magnitudes") {
  CHECK(log_sum_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_sum_exp(-1e300, 0.0) == 0.0);
  CHECK(std::isinf(log_diff_exp(5.0, 5.0)));
  CHECK(log_diff_exp(std::log(3.0), std::log(1.0)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("rational helpers") {
  CHECK(factorial(10) == 3628800);
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(to_rational(0.1) != Rational(1, 10));  // exact binary value
  CHECK(to_rational(0.375) == Rational(3, 8));
  CHECK(log_abs(factorial(200)) == doctest::Approx(std::lgamma(201.0)).epsilon(1e-14));

  const auto s = sqrt_enclosure(Rational(9, 4));
  CHECK(s.lo == s.hi);
  CHECK(s.lo == Rational(3, 2));
  const auto r2 = sqrt_enclosure(Rational(2));
  CHECK(r2.lo * r2.lo <= 2);
  CHECK(r2.hi * r2.hi >= 2);
  CHECK(r2.width() < Rational(1, 1000000));

  RationalInterval a{Rational(-1), Rational(2)};
  const auto sq = square(a);
  CHECK(sq.lo == 0);
  CHECK(sq.hi == 4);
  const auto rp = reciprocal(RationalInterval{Rational(2), Rational(4)});
  CHECK(rp.lo == Rational(1, 4));
  CHECK(rp.hi == Rational(1, 2));
}

namespace {

// d^n/dx^n of 1/(1+x^2) at x = 0 is 0 for odd n and (-1)^{n/2} n! otherwise.
ExactJet lorentzian(const Rational& x1, const Rational& x2, int degree) {
  ExactJet::Point p{x1, x2};
  auto X = ExactJet::variable(p, degree, 0);
  auto Y = ExactJet::variable(p, degree, 1);
  return recip(X * X + Y * Y * Rational(4) + Rational(1));
}

}  // namespace

TEST_CASE("jet reciprocal reproduces closed-form axis derivatives") {
  const auto j = lorentzian(0, 0, 12);
  for (int n = 0; n <= 12; ++n) {
    Rational expect = n % 2 ? Rational(0) : factorial(n) * ((n / 2) % 2 ? -1 : 1);
    CHECK(j.derivative({n, 0}) == expect);
    // Along x2 the 4 y^2 term scales the n-th derivative by 2^n.
    CHECK(j.derivative({0, n}) == expect * pow(Rational(2), n));
  }
  CHECK_THROWS_AS(j.derivative({7, 6}), DegreeError);
  CHECK_THROWS_AS(recip(ExactJet::variable({0, 0}, 3, 0)), SingularJetError);
}

TEST_CASE("jets agree with the finite-difference oracle") {
  const Rational x1 = to_rational(0.3), x2 = to_rational(-0.7);
  const auto jet = lorentzian(x1, x2, 4);
  PointwiseEvaluator f = [](const HighPrecision& a, const HighPrecision& b) {
    return HighPrecision(1) / (1 + a * a + 4 * b * b);
  };
  for (auto alpha : multiindices_up_to(4)) {
    const double exact = jet.derivative(alpha).get_d();
    const double fd = finite_difference_check(f, {0.3, -0.7}, alpha);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("finite differences are exact on low-degree polynomials") {
  PointwiseEvaluator f = [](const HighPrecision& a, const HighPrecision& b) { return a * a * a * b; };
  CHECK(finite_difference_check(f, {1.5, 2.0}, {3, 1}) == doctest::Approx(6.0).epsilon(1e-20));
  CHECK(finite_difference_check(f, {1.5, 2.0}, {1, 0}) == doctest::Approx(3 * 2.25 * 2).epsilon(1e-15));
  CHECK_THROWS_AS(finite_difference_check(f, {0, 0}, {5, 0}), UsageError);
}

TEST_CASE("sin_cos jets satisfy the Pythagorean identity") {
  FloatJet::Point p{0.4, 1.1};
  auto t = FloatJet::variable(p, 8, 1) * 3.0 + FloatJet::variable(p, 8, 0);
  auto [s, c] = sin_cos(t);
  auto one = s * s + c * c;
  CHECK(one.value() == doctest::Approx(1.0));
  for (auto a : multiindices_up_to(8))
    if (a.order() > 0) CHECK(std::abs(one.coeff(a)) < 1e-12);
  // d^k/dt^k sin at t0 cycles through sin, cos, -sin, -cos; x2 scales by 3^k.
  const double t0 = 0.4 + 3.3;
  CHECK(s.derivative({0, 3}) == doctest::Approx(-27 * std::cos(t0)));
  CHECK(c.derivative({2, 0}) == doctest::Approx(-std::cos(t0)));

  auto [es, ec] = sin_cos(ExactJet::variable({0, 0}, 7, 0));
  CHECK(es.derivative({7, 0}) == -1);
  CHECK(ec.derivative({6, 0}) == -1);
  CHECK_THROWS_AS(sin_cos(ExactJet::variable({1, 0}, 3, 0)), UsageError);
}

TEST_CASE("multiindex enumeration is graded") {
  const auto v = multiindices_up_to(3);
  CHECK(v.size() == 10);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1].order() <= v[i].order());
}
