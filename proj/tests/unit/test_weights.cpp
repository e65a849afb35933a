#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dcsharp/density.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/sequence_spec.hpp"
#include "dcsharp/weights.hpp"

using namespace dcsharp;

namespace {

std::vector<WeightSequence> builtin_families() {
  return {WeightSequence::analytic(),         WeightSequence::gevrey(1),
          WeightSequence::gevrey(0.5),        WeightSequence::gevrey(2),
          WeightSequence::log_power(std::numbers::e), WeightSequence::log_power(5.0),
          parse_sequence("counterexample")};
}

}  // namespace

TEST_CASE("family values") {
  CHECK(WeightSequence::gevrey(1).weight(4).to_double() == doctest::Approx(24));
  CHECK(WeightSequence::gevrey(1).exact_weight(4) == 24);
  CHECK(WeightSequence::gevrey(1).ratio(2).to_double() == doctest::Approx(3));
  CHECK(WeightSequence::gevrey(1).exact_ratio(2) == 3);
  CHECK(WeightSequence::gevrey(2).exact_weight(3) == 36);
  for (std::size_t k : {0u, 1u, 17u, 1000u}) {
    CHECK(WeightSequence::analytic().log_weight(k) == 0.0);
    CHECK(WeightSequence::analytic().log_ratio(k) == 0.0);
  }
  auto shifted = WeightSequence::gevrey(1).shift(2);
  CHECK(shifted.exact_weight(3) == 720);
  CHECK(shifted.log_weight(3) == doctest::Approx(std::log(720.0)));
  CHECK(shifted.exact_ratio(3) == 56);  // 8!/6!
  auto same = WeightSequence::gevrey(1).power(1);
  for (std::size_t k = 0; k < 50; ++k) CHECK(same.log_weight(k) == WeightSequence::gevrey(1).log_weight(k));
  CHECK(WeightSequence::gevrey(1).power(2).exact_weight(5) == 14400);
}

TEST_CASE("log_power matches its closed form and its ratios telescope") {
  const double c = 3.5;
  auto M = WeightSequence::log_power(c);
  CHECK(M.log_weight(0) == 0.0);
  for (std::size_t k = 1; k < 300; ++k) {
    const long double expect = static_cast<long double>(k) * std::log(std::log(static_cast<long double>(k) + c));
    CHECK(M.log_weight(k) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
    CHECK(M.log_ratio(k) == doctest::Approx(M.log_weight(k + 1) - M.log_weight(k)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(WeightSequence::log_power(2.0), DomainError);
}

TEST_CASE("validation rejects bad tables") {
  CHECK_THROWS_AS(WeightSequence::custom({0.0, 1.0, 1.5}), ValidationError);  // ratios decrease
  CHECK_THROWS_AS(WeightSequence::custom({0.5, 1.0, 2.0}), ValidationError);  // M_0 != 1
  auto ok = WeightSequence::custom({0.0, 0.0, 1.0, 3.0});
  CHECK(ok.max_index() == 3u);
  CHECK_THROWS_AS(ok.log_weight(4), HorizonError);
  CHECK_THROWS_AS(WeightSequence::gevrey(0.5).exact_weight(3), UsageError);
}

TEST_CASE("spec strings round-trip") {
  CHECK(parse_sequence("gevrey:1").spec() == "gevrey:1");
  CHECK(parse_sequence("shift:2:gevrey:1").exact_weight(3) == 720);
  CHECK(parse_sequence("power:3:analytic").log_weight(10) == 0.0);
  CHECK(parse_sequence("logpow:2.72").spec() == "logpow:2.7200000000000002");
  CHECK(parse_sequence("counterexample:3:4").spec() == "counterexample:3:4");
  CHECK_THROWS_AS(parse_sequence("nope"), UsageError);
  CHECK_THROWS_AS(parse_sequence("gevrey:x"), UsageError);
  CHECK_THROWS_AS(parse_sequence("shift:0:analytic"), UsageError);
  CHECK_THROWS_AS(parse_sequence("custom:/nonexistent/file"), UsageError);
}

TEST_CASE("ratios are nondecreasing and shifts stay log-convex") {
  for (const auto& M : builtin_families()) {
    CAPTURE(M.spec());
    CHECK(check_log_convex(M, 1000).log_convex);
    CHECK(check_log_convex(M.shift(2), 500).log_convex);
    CHECK(check_log_convex(M.shift(3), 300).log_convex);
  }
  CHECK(check_log_convex(WeightSequence::gevrey(1), 60, true).log_convex);
}

TEST_CASE("closure diagnostic") {
  CHECK(closure_diagnostic(WeightSequence::analytic(), 100).sup.to_double() == 1.0);
  // (k+1)^{1/k} is largest at k = 1.
  auto r = closure_diagnostic(WeightSequence::gevrey(1), 100);
  CHECK(r.argsup == 1);
  CHECK(r.sup.to_double() == doctest::Approx(2.0));
  CHECK(r.sup.to_double() <= 4.0);
}

TEST_CASE("quasianalyticity trend") {
  CHECK(quasianalyticity_diagnostic(WeightSequence::analytic(), 1000).trend == SeriesTrend::diverging_like);
  auto g = quasianalyticity_diagnostic(WeightSequence::gevrey(1), 1000);
  CHECK(g.trend == SeriesTrend::converging_like);
  // sum 1/(k+1)^2 -> pi^2/6.
  CHECK(g.partial_sums.back() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(2e-3));
  CHECK(quasianalyticity_diagnostic(WeightSequence::log_power(std::numbers::e), 100000).trend ==
        SeriesTrend::diverging_like);
  CHECK_THROWS_AS(quasianalyticity_diagnostic(WeightSequence::analytic(), 4), UsageError);
}

TEST_CASE("class comparison") {
  auto a = compare(WeightSequence::analytic(), WeightSequence::gevrey(1), 200);
  CHECK(a.verdict == ComparisonVerdict::strictly_contained_diagnostic);
  CHECK(a.sup_ratio_root.to_double() <= 1.0);
  CHECK(a.inf_ratio_root.to_double() < 0.02);  // (1/200!)^{1/200} ~ e/200

  auto same = compare(WeightSequence::gevrey(1), WeightSequence::gevrey(1), 200);
  CHECK(same.verdict == ComparisonVerdict::contained);
  CHECK(same.sup_ratio_root.log_abs() == 0.0);
  CHECK(same.inf_ratio_root.log_abs() == 0.0);

  auto up = compare(WeightSequence::gevrey(2), WeightSequence::gevrey(1), 200);
  CHECK(up.verdict == ComparisonVerdict::not_contained_diagnostic);
  CHECK(up.inf_ratio_root <= up.sup_ratio_root);
}

TEST_CASE("square versus shift") {
  auto an = square_vs_shift_diagnostic(WeightSequence::analytic(), 100);
  CHECK(an.log_inf_first == 0.0);
  CHECK(an.log_inf_second == 0.0);
  auto g = square_vs_shift_diagnostic(WeightSequence::gevrey(1), 100);
  // (k!)^{1/k}/(k+1) decreases toward 1/e.
  CHECK(std::exp(g.log_inf_first) == doctest::Approx(std::exp(std::lgamma(101.0) / 100) / 101).epsilon(1e-9));
  CHECK(std::exp(g.log_inf_first) > 1 / std::numbers::e);
  for (const auto& M : builtin_families()) {
    CAPTURE(M.spec());
    auto r = square_vs_shift_diagnostic(M, 1000);
    CHECK(r.inequality_holds);
    CHECK(r.square_below_shift);
  }
  auto ce = square_vs_shift_diagnostic(parse_sequence("counterexample"), 200);
  CHECK(std::exp(ce.log_inf_second) < 0.05);
}

TEST_CASE("lambda_eps and density") {
  // (k!^2/(2k)!)^{1/2k} decreases to 1/2 from above: 0.707 at k = 1, 0.588 at k = 4.
  auto L = lambda_eps(WeightSequence::gevrey(1), 0.4, 50);
  REQUIRE(!L.empty());
  CHECK(L.front() == 4);
  CHECK(L.back() == 50);
  CHECK(lambda_eps(WeightSequence::gevrey(1), 0.5, 200).empty());
  CHECK(lambda_eps(WeightSequence::analytic(), 0.1, 100).empty());
  CHECK_THROWS_AS(lambda_eps(WeightSequence::analytic(), 1.5, 10), UsageError);

  std::vector<std::size_t> evens, squares;
  for (std::size_t k = 2; k <= 20000; k += 2) evens.push_back(k);
  for (std::size_t k = 1; k * k <= 20000; ++k) squares.push_back(k * k);
  auto de = density_estimate(evens, {10, 100, 1000, 10000});
  CHECK(de.samples.back().density == doctest::Approx(0.5));
  CHECK(de.counting_monotone);
  CHECK(de.counting_bounded);
  auto ds = density_estimate(squares, {100, 10000});
  CHECK(ds.samples.back().density == doctest::Approx(0.01));

  CHECK(harmonic_sum(evens, 100) == abel_right_side(evens, 100));
  CHECK(harmonic_sum(evens, 100) > Rational(2));
  for (const auto& s : de.samples) {
    if (s.n > 5000) {
      CHECK(!s.abel_checked);
      continue;
    }
    CHECK(s.abel_checked);
    CHECK(s.abel_equal);
  }
  CHECK_THROWS_AS(density_estimate({3, 2}, {5}), UsageError);
}
