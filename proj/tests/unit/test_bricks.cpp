#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dcsharp/bricks.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/finite_difference.hpp"

using namespace dcsharp;

TEST_CASE("brick values") {
  BrickParams p{2.0, 1.0, 0.5};
  CHECK(brick_eval(p, p.center()) == 1.0);
  CHECK(brick_eval(p, {0, 0}) == doctest::Approx(0.2));
  CHECK(brick_jet_exact(p, {0, 0}, 0).value() == Rational(1, 5));
  CHECK_THROWS_AS(brick_eval(BrickParams{0.5, 1, 0.5}, {0, 0}), DomainError);
  CHECK_THROWS_AS(brick_eval(BrickParams{1, 1, 1.0}, {0, 0}), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  BrickParams b{1.7, 3.0, 0.3};
  for (int i = 0; i < 50; ++i) {
    const double t = ang(rng);
    double prev = 1.0;
    for (double s = 0.01; s < 5; s *= 1.5) {
      const double v = brick_eval(b, {b.rho * b.q + s * std::cos(t), s * std::sin(t)});
      CHECK(v < prev);
      CHECK(v > 0);
      prev = v;
    }
  }
}

TEST_CASE("brick jet at the center") {
  BrickParams p{3.0, 2.0, 0.25};
  const RationalPoint c{to_rational(p.rho * p.q), Rational(0)};
  auto j = brick_jet_exact(p, c, 8);
  CHECK(j.value() == 1);
  CHECK(j.derivative({0, 1}) == 0);
  // 1/(1 + (m t/rho)^2) = 1 - (m/rho)^2 t^2 + ...
  CHECK(j.derivative({0, 2}) == Rational(-2 * 4 * 16));
  for (auto a : multiindices_up_to(8))
    if (a.second % 2) CHECK(j.coeff(a) == 0);
}

TEST_CASE("brick jets match finite differences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> x(-2, 2), q(1, 4), m(1, 5), r(0.1, 0.9);
  for (int i = 0; i < 20; ++i) {
    BrickParams p{q(rng), m(rng), r(rng)};
    const std::array<double, 2> pt{x(rng), x(rng)};
    auto jet = brick_jet_exact(p, {to_rational(pt[0]), to_rational(pt[1])}, 4);
    PointwiseEvaluator f = [p](const HighPrecision& a, const HighPrecision& b) {
      const HighPrecision rho(p.rho), d1 = a - rho * HighPrecision(p.q), d2 = HighPrecision(p.m) * b;
      return rho * rho / (rho * rho + d1 * d1 + d2 * d2);
    };
    for (auto alpha : multiindices_up_to(4)) {
      const double exact = jet.derivative(alpha).get_d();
      const double fd = finite_difference_check(f, pt, alpha);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("cauchy kernel bound") {
  auto r = cauchy_bound_check(1, {0, 0}, 2);
  CHECK(r.passed());
  auto j = cauchy_kernel_jet(1, {0, 0}, 2);
  CHECK(j.coeff(0, 0) == 1);
  CHECK(j.coeff(0, 2) == -1);
  // alpha = (0,2): LHS 1 vs RHS 8 * 64 = 512.
  CHECK(std::exp(r.per_sample[0].rhs_log) > 0);
  auto sweep = cauchy_bound_sweep(100, 8, 2024);
  CHECK(sweep.passed());
  CHECK(sweep.checks == 100 * 45);
  CHECK(sweep.per_sample.size() == 100);
  CHECK(sweep.empirical_constant > 0);
  CHECK(sweep.empirical_constant <= 8);
  CHECK(sweep.worst->margin_log >= 0);
}

TEST_CASE("brick remark bound holds exactly") {
  std::vector<RationalPoint> pts;
  for (int a = -3; a <= 3; ++a)
    for (int b = -2; b <= 2; ++b) pts.push_back({Rational(a, 4), Rational(b, 3)});
  CHECK(brick_remark_check(BrickParams{1.5, 2.0, 0.375}, pts, 8).passed());
  CHECK(brick_remark_check(BrickParams{4.0, 7.0, 0.125}, pts, 8).passed());
}

TEST_CASE("polar composite") {
  BrickParams p{2.0, 3.0, 0.4};
  CHECK(polar_brick_jet(p, p.rho * p.q, 0.0, 3).value() == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> r(0, 3), t(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 50; ++i) {
    const double rr = r(rng), tt = t(rng);
    const double direct = brick_eval(p, {rr * std::cos(tt), rr * std::sin(tt)});
    CHECK(polar_brick_jet(p, rr, tt, 2).value() == doctest::Approx(direct).epsilon(1e-14));
    // v(r, -theta) = v(r, theta); theta-odd coefficients vanish on the axis.
    CHECK(polar_brick_jet(p, rr, -tt, 0).value() == doctest::Approx(direct).epsilon(1e-14));
    auto axis = polar_brick_jet(p, rr, 0.0, 6);
    for (auto a : multiindices_up_to(6))
      if (a.second % 2) CHECK(std::abs(axis.coeff(a)) <= 1e-12 * std::max(1.0, std::abs(axis.value())));
  }
  // d/dr and d/dtheta chain rule against finite differences.
  PointwiseEvaluator f = [p](const HighPrecision& rr, const HighPrecision& tt) {
    const HighPrecision rho(p.rho), x1 = rr * cos(tt) - rho * HighPrecision(p.q), x2 = HighPrecision(p.m) * rr * sin(tt);
    return rho * rho / (rho * rho + x1 * x1 + x2 * x2);
  };
  auto jet = polar_brick_jet(p, 0.7, 0.3, 4);
  for (auto alpha : multiindices_up_to(4)) {
    const double d = jet.derivative(alpha);
    CHECK(std::abs(finite_difference_check(f, {0.7, 0.3}, alpha) - d) <= 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("polar brick bound sweep") {
  auto samples = polar_samples(200, 42);
  CHECK(samples.front().r == 0.0);
  CHECK(samples.back().r == doctest::Approx(10.0));
  auto r = polar_brick_bound_check(samples, 6);
  CHECK(r.passed());
  CHECK(r.empirical_constant >= 1.0);  // alpha = 0 at the center-like samples gives |v| close to 1
  CHECK(r.empirical_constant < kBrickPolarConstant);
  // Same seed, same report.
  auto again = polar_brick_bound_check(polar_samples(200, 42), 6);
  CHECK(again.empirical_constant == r.empirical_constant);
  CHECK(again.worst->margin_log == r.worst->margin_log);
}
