#include <cmath>

#include "doctest.h"
#include "dcsharp/counterexample.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/errors.hpp"

using namespace dcsharp;

// Reference values from tests/oracles/counterexample_oracle.py (mpmath, 40 digits).

TEST_CASE("slow sequence v") {
  const auto lv = slow_sequence_log(4);
  CHECK(std::exp(lv[0]) == 1.0);
  CHECK(std::exp(lv[1]) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::exp(lv[2]) == doctest::Approx(3.414213562373095).epsilon(1e-14));
  CHECK(std::exp(lv[3]) == doctest::Approx(5.385410681680073).epsilon(1e-14));
  auto r = verify_slow_sequence(2000);
  CHECK(r.increasing);
  CHECK(r.ratio_decreasing_to_one);
  CHECK(r.doubling_ratio_increasing);
}

TEST_CASE("schedule shape") {
  auto s = build_lambda(8);
  const std::vector<std::uint64_t> head = {0, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22,
                                           24, 26, 28, 30, 32, 34, 36, 38, 40, 44};
  REQUIRE(s.entries.size() > head.size());
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(*s.entries[i].value == head[i]);
  CHECK(s.doubled_pairs().size() == 8);
  for (auto [a, b] : s.doubled_pairs()) {
    double span = 0;
    for (std::size_t i = a; i < b; ++i) span += s.entries[i].log_gap;
    CHECK(span == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(b == 2 * a);  // the v-index doubles across a cluster
  }
  for (std::size_t i = 1; i < s.integer_prefix; ++i) {
    CHECK(*s.entries[i].value % 2 == 0);
    CHECK(*s.entries[i].value > *s.entries[i - 1].value);
  }
  for (std::size_t i = 1; i + 1 < s.entries.size(); ++i) CHECK(s.entries[i].log_gap >= 0);
  // v_20^2 ~ 2.8e5, so the second cluster starts far beyond 2^62.
  CHECK(s.integer_prefix == head.size());
  CHECK(s.entries[21].log_value == doctest::Approx(std::log(44.0) + 282481.8875255791).epsilon(1e-12));
  CHECK_THROWS_AS(build_lambda(0), UsageError);
  CHECK_THROWS_AS(build_lambda(40), HorizonError);
}

TEST_CASE("weights of the counterexample") {
  auto S = build_counterexample();
  CHECK(S.sequence.log_weight(0) == 0.0);
  CHECK(S.sequence.log_weight(1) == 0.0);
  CHECK(S.sequence.log_weight(3) == 0.0);  // first block, L = v_0 = 1
  CHECK(S.sequence.log_weight(22) == doctest::Approx(46.41153272652491).epsilon(1e-13));
  CHECK(S.sequence.log_weight(44) == doctest::Approx(162.3019542031240).epsilon(1e-13));
  CHECK(S.family->log_L(4) == doctest::Approx(std::log(2.0)));
  CHECK(S.sequence.log_weight(4) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("four properties at 8 pairs, K = 5000") {
  auto S = build_counterexample(8);
  auto lc = verify_log_convex(S, 5000);
  CHECK(lc.nondecreasing);
  CHECK(lc.constant_within_blocks);
  CHECK(lc.generic_validation);
  CHECK(lc.boundaries_checked == 20);

  auto dc = verify_diff_closed(S, 5000);
  CHECK(dc.bounded_by_four);
  CHECK(dc.sup_b == doctest::Approx(1.278374610499476).epsilon(1e-12));
  CHECK(dc.argsup == 5);
  CHECK(dc.max_boundary_jump_sq == doctest::Approx(4.0));

  auto qa = verify_quasianalytic_diag(S, 5000);
  CHECK(qa.chain_holds);
  CHECK(qa.gap_partial_sums.size() == 8);
  for (std::size_t c = 0; c < 8; ++c) CHECK(qa.gap_partial_sums[c] >= 0.9 * static_cast<double>(c + 1));
  CHECK(qa.trend == "diverging-like");

  auto sg = verify_strict_gap(S, 5000);
  CHECK(sg.identity_holds);
  CHECK(sg.within_unit_interval);
  CHECK(sg.first_exact_one == 1u);
  CHECK(sg.first_below_tenth.has_value());
  CHECK(sg.min_g == doctest::Approx(0.03668740214707642).epsilon(1e-10));
  CHECK(sg.argmin == 27);

  auto lit = literal_power_diagnostic(S, 5000);
  CHECK(lit.first_violation == 5u);  // a_4 jumps, a_5 falls back
}

TEST_CASE("closure matches the scan") {
  auto S = build_counterexample(8);
  auto c = closure_diagnostic(S.sequence, 5000);
  CHECK(c.sup.to_double() <= 4.0);
  CHECK(c.sup.to_double() == doctest::Approx(1.278374610499476).epsilon(1e-12));
}

TEST_CASE("rows") {
  auto S = build_counterexample(8);
  auto rows = counterexample_rows(S, 50);
  REQUIRE(rows.size() == 50);
  CHECK(rows[21].k == 22);
  CHECK(rows[21].g_k == doctest::Approx(0.04250509589526715).epsilon(1e-10));
  CHECK(rows[0].g_k == 1.0);
}
