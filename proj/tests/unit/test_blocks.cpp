#include <cmath>

#include "doctest.h"
#include "dcsharp/blocks.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/finite_difference.hpp"
#include "dcsharp/sequence_spec.hpp"

using namespace dcsharp;

namespace {

const BaseFunctionTruncation& gevrey_h() {
  static const auto h = truncate_base_function(WeightSequence::gevrey(1), 60);
  return h;
}

}  // namespace

TEST_CASE("weights of the base function") {
  const auto& h = gevrey_h();
  REQUIRE(h.exact());
  CHECK(h.saturated_terms.empty());
  // w_k = M_k / (2^k m_k^k) = k! / (2^k (k+1)^k) by the Ostrowski identity.
  for (unsigned long k = 1; k <= 60; ++k) {
    Rational expect = factorial(k) / (pow(Rational(2), k) * pow(Rational(k + 1), k));
    CHECK((*h.exact_weights)[k - 1] == expect);
  }
  CHECK(h.tail_bound.log_abs() == doctest::Approx(-60 * std::log(2.0)));
  auto ce = truncate_base_function(parse_sequence("counterexample"), 60);
  CHECK(!ce.exact());
  CHECK(ce.weights[0].log_abs() < 0);
}

TEST_CASE("h values and partial sums") {
  const auto& h = gevrey_h();
  CHECK(h_eval(h, {0.3, -1.2}).value > 0);
  CHECK(h_eval(h, {0.3, -1.2}).value == h_eval(h, {0.3, 1.2}).value);
  auto h40 = truncate_base_function(WeightSequence::gevrey(1), 40);
  auto h50 = truncate_base_function(WeightSequence::gevrey(1), 50);
  const Rational s40 = h_partial_sum_exact(h40, {0, 0});
  const Rational s50 = h_partial_sum_exact(h50, {0, 0});
  CHECK(s50 > s40);
  CHECK(s50 - s40 <= pow(Rational(1, 2), 40));
  CHECK(h_eval(h, {0, 0}).value == doctest::Approx(h_partial_sum_exact(h, {0, 0}).get_d()).epsilon(1e-14));
}

TEST_CASE("axis closed form equals the jet of the truncated series") {
  const auto& h = gevrey_h();
  for (Rational x1 : {Rational(0), Rational(1, 3), Rational(-2)}) {
    auto jet = h_jet_exact(h, {x1, 0}, 8);
    for (unsigned order = 0; order <= 8; order += 2) {
      auto d = h_axis_x2_derivative_exact(h, x1, order);
      CHECK(!d.symmetric_zero);
      CHECK(d.value == jet.derivative({0, static_cast<int>(order)}));
    }
    CHECK(h_axis_x2_derivative_exact(h, x1, 0).value == h_partial_sum_exact(h, {x1, 0}));
  }
  auto odd = h_axis_x2_derivative_exact(h, 0, 5);
  CHECK(odd.symmetric_zero);
  CHECK(odd.value == 0);
}

TEST_CASE("base function lower bound and sign alternation") {
  const auto& h = gevrey_h();
  auto d2 = h_axis_x2_derivative_exact(h, 0, 2);
  CHECK(d2.value < 0);
  CHECK(abs(d2.value) >= 1);
  for (unsigned n = 1; n <= 8; ++n) {
    auto d = h_axis_x2_derivative_exact(h, 0, 2 * n);
    CHECK((n % 2 ? d.value < 0 : d.value > 0));
    const Rational bound = factorial(2 * n) * h.M.exact_weight(2 * n) / pow(Rational(4), n);
    CHECK(abs(d.value) - d.tail_bound >= bound);
  }
}

TEST_CASE("base function upper bound on the grid") {
  const auto& h = gevrey_h();
  auto grid = default_base_grid();
  CHECK(grid.size() == 25);
  auto r = base_upper_check(h, grid, 6);
  CHECK(r.passed());
  // The bound decays with |x| faster than h: margin at (2,2) exceeds margin at 0.
  double at_origin = 0, at_corner = 0;
  for (const auto& s : r.per_sample) {
    if (s.point[0] == 0 && s.point[1] == 0) at_origin = s.margin_log;
    if (s.point[0] == 2 && s.point[1] == 2) at_corner = s.margin_log;
  }
  CHECK(at_corner > at_origin);
  // Non-exact families take the floating path.
  auto ce = truncate_base_function(parse_sequence("counterexample"), 60);
  CHECK(base_upper_check(ce, grid, 4).passed());
}

TEST_CASE("double jets of h agree with finite differences") {
  const auto& h = gevrey_h();
  PointwiseEvaluator f = [&h](const HighPrecision& a, const HighPrecision& b) {
    HighPrecision acc = 0;
    for (std::size_t i = 0; i < h.K; ++i) {
      const HighPrecision m = HighPrecision((*h.exact_ratios)[i].get_d());
      const HighPrecision w = HighPrecision((*h.exact_weights)[i].get_num().get_str()) /
                              HighPrecision((*h.exact_weights)[i].get_den().get_str());
      acc += w / (1 + a * a + m * m * b * b);
    }
    return acc;
  };
  auto jet = h_jet(h, {0.4, 0.1}, 4);
  for (auto alpha : multiindices_up_to(4)) {
    const double d = jet.derivative(alpha);
    CHECK(std::abs(finite_difference_check(f, {0.4, 0.1}, alpha, 1e-4) - d) <= 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST_CASE("blocks") {
  const auto& h = gevrey_h();
  BlockParams bp{3.0, 0.5};
  auto d2 = block_axis_derivative(bp, h, 2);
  // |d^2 f(p)| >= 2! M_2 / (4 rho^2) = 4.
  CHECK(abs(d2.value) - d2.tail_bound >= 4);
  CHECK(d2.value == h_axis_x2_derivative_exact(h, 0, 2).value * 4);
  const RationalPoint p{to_rational(1.5), 0};
  CHECK(block_jet_exact(bp, h, p, 0).value() == h_partial_sum_exact(h, {0, 0}));
  // f(p + y) = h(y / rho).
  for (int a = -2; a <= 2; ++a) {
    const RationalPoint y{Rational(a, 5), Rational(a * a, 7)};
    const RationalPoint x{p[0] + y[0], y[1]};
    CHECK(block_jet_exact(bp, h, x, 0).value() == h_partial_sum_exact(h, {y[0] * 2, y[1] * 2}));
  }
  auto jet = block_jet_exact(bp, h, {Rational(7, 5), Rational(1, 10)}, 4);
  auto fj = block_jet(bp, h, {1.4, 0.1}, 4);
  for (auto a : multiindices_up_to(4)) CHECK(fj.derivative(a) == doctest::Approx(jet.derivative(a).get_d()).epsilon(1e-10));
  CHECK(block_upper_check(bp, h, block_sample_points(bp, 20, 77), 4).passed());
  CHECK(block_upper_check(BlockParams{1.2, 0.1}, h, block_sample_points(BlockParams{1.2, 0.1}, 20, 78), 4).passed());
}

TEST_CASE("polar blocks") {
  const auto& h = gevrey_h();
  BlockParams bp{2.0, 0.3};
  auto g = polar_block_jet(bp, h, 0.5, 0.7, 0);
  auto f = block_jet(bp, h, {0.5 * std::cos(0.7), 0.5 * std::sin(0.7)}, 0);
  CHECK(g.value() == doctest::Approx(f.value()).epsilon(1e-13));
  auto samples = polar_block_samples(100, 99);
  auto r = polar_block_bound_check(h, samples, 5);
  CHECK(r.passed());
  CHECK(r.empirical_constant < kBlockPolarConstant);
  auto shifted = truncate_base_function(WeightSequence::gevrey(1).shift(2), 10);
  CHECK_THROWS_AS(polar_block_bound_check(shifted, samples, 2), UsageError);
}
