#include <cmath>
#include <random>

#include "doctest.h"
#include "dcsharp/errors.hpp"
#include "dcsharp/ostrowski.hpp"
#include "dcsharp/sequence_spec.hpp"

using namespace dcsharp;

namespace {

// Direct oracle: max over n <= horizon of (n+2) log r - log M_n.
std::pair<double, std::size_t> brute_phi(const WeightSequence& M, double log_r, std::size_t horizon) {
  double best = -INFINITY;
  std::size_t arg = 0;
  for (std::size_t n = 0; n <= horizon; ++n) {
    const double v = (static_cast<double>(n) + 2) * log_r - M.log_weight(n);
    if (v > best) {
      best = v;
      arg = n;
    }
  }
  return {best, arg};
}

}  // namespace

TEST_CASE("phi on small cases") {
  auto a = phi(WeightSequence::analytic(), 0.5);
  CHECK(a.argmax_n == 0);
  CHECK(a.value.to_double() == doctest::Approx(0.25));
  auto g = phi_exact(WeightSequence::gevrey(1), Rational(3));
  CHECK(g.value == Rational(81, 2));
  CHECK(g.argmax_n == 2);  // tie with n = 3, smallest reported
  CHECK(phi(WeightSequence::gevrey(1), 3.0).value.to_double() == doctest::Approx(40.5));
  auto sat = phi(WeightSequence::analytic(), 2.0);
  CHECK(sat.saturated);
  CHECK_THROWS_AS(phi(WeightSequence::gevrey(1), -1.0), UsageError);
}

TEST_CASE("phi agrees with a brute-force scan") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 4.0);
  for (const char* spec : {"gevrey:1", "gevrey:0.5", "logpow:3", "counterexample"}) {
    auto M = parse_sequence(spec);
    for (int i = 0; i < 40; ++i) {
      const double log_r = u(rng);
      auto p = phi_log(M, log_r);
      if (p.saturated) continue;
      auto [best, arg] = brute_phi(M, log_r, p.argmax_n + 200);
      CAPTURE(spec);
      CAPTURE(log_r);
      CHECK(p.value.log_abs() == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi is monotone in r") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 40.0);
  for (const char* spec : {"gevrey:1", "gevrey:2", "logpow:2.8", "counterexample"}) {
    auto M = parse_sequence(spec);
    for (int i = 0; i < 100; ++i) {
      double r1 = u(rng), r2 = u(rng);
      if (r1 > r2) std::swap(r1, r2);
      CHECK(phi(M, r1).value <= phi(M, r2).value);
    }
  }
}

TEST_CASE("tie range gives identical values") {
  auto M = WeightSequence::gevrey(1);
  for (unsigned long k = 1; k <= 20; ++k) {
    const Rational r = M.exact_ratio(k);
    const Rational at_k = pow(r, k + 2) / M.exact_weight(k);
    const Rational at_k1 = pow(r, k + 3) / M.exact_weight(k + 1);
    CHECK(at_k == at_k1);
    CHECK(phi_exact(M, r).value == at_k);
  }
}

TEST_CASE("identity m_k^{k+2}/phi(m_k) = M_k") {
  auto M = WeightSequence::gevrey(1);
  auto c5 = verify_phi_identity(M, 5);
  CHECK(c5.exact_mode);
  CHECK(c5.exact_equal == true);
  CHECK(c5.log_difference == 0.0);
  CHECK(phi_exact(M, 6).value == pow(Rational(6), 7) / 120);
  for (std::size_t k = 0; k <= 50; ++k) CHECK(verify_phi_identity(M, k).passed());
  CHECK(verify_phi_identity(WeightSequence::analytic(), 0).passed());
  for (const char* spec : {"logpow:2.718281828459045", "logpow:6", "counterexample"}) {
    auto S = parse_sequence(spec);
    for (std::size_t k = 0; k <= 30; ++k) {
      auto c = verify_phi_identity(S, k);
      CHECK(!c.exact_mode);
      CHECK(std::abs(c.log_difference) <= 1e-12 * std::max(1.0, std::abs(c.log_rhs)));
    }
  }
}
