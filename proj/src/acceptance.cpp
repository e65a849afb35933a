#include "dcsharp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "dcsharp/blocks.hpp"
#include "dcsharp/bricks.hpp"
#include "dcsharp/counterexample.hpp"
#include "dcsharp/density.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/finite_difference.hpp"
#include "dcsharp/flat.hpp"
#include "dcsharp/ostrowski.hpp"
#include "dcsharp/sequence_spec.hpp"

namespace dcsharp::acceptance {

namespace {

constexpr std::uint64_t kSeed = 20240901;

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

bool ostrowski_identity(std::string& detail) {
  const auto M = WeightSequence::gevrey(1);
  std::size_t exact_ok = 0;
  for (std::size_t k = 0; k <= 50; ++k) {
    auto c = verify_phi_identity(M, k);
    if (c.exact_mode && c.exact_equal == true) ++exact_ok;
  }
  double worst = 0;
  for (const char* spec : {"logpow:2.718281828459045", "counterexample:8"}) {
    const auto S = parse_sequence(spec);
    for (std::size_t k = 0; k <= 30; ++k) worst = std::max(worst, std::abs(verify_phi_identity(S, k).log_difference));
  }
  detail = "gevrey:1 exact for " + std::to_string(exact_ok) + "/51 k; max |dlog| (logpow, counterexample) = " +
           fmt(worst, 3);
  return exact_ok == 51 && worst <= 1e-12;
}

bool cauchy_brick(std::string& detail) {
  auto r = cauchy_bound_sweep(100, 8, kSeed);
  detail = std::to_string(r.checks) + " exact comparisons, " + std::to_string(r.failures) + " failures";
  if (r.worst) detail += ", min margin (log) " + fmt(r.worst->margin_log);
  return r.passed() && r.checks == 100 * 45;
}

bool base_lower(std::string& detail) {
  const auto h = truncate_base_function(WeightSequence::gevrey(1), 60);
  bool ok = true;
  double min_margin = std::numeric_limits<double>::infinity();
  for (unsigned n = 1; n <= 8; ++n) {
    auto d = h_axis_x2_derivative_exact(h, 0, 2 * n);
    const Rational lhs = abs(d.value) - d.tail_bound;
    const Rational bound = factorial(2 * n) * h.M.exact_weight(2 * n) / pow(Rational(4), n);
    ok = ok && lhs >= bound;
    min_margin = std::min(min_margin, log_abs(lhs) - log_abs(bound));
  }
  detail = "n = 1..8, K = 60, min margin (log) " + fmt(min_margin);
  return ok;
}

bool base_upper(std::string& detail) {
  const auto h = truncate_base_function(WeightSequence::gevrey(1), 60);
  auto r = base_upper_check(h, default_base_grid(), 6);
  detail = std::to_string(r.checks) + " exact comparisons on 25 points, " + std::to_string(r.failures) + " failures";
  if (r.worst) detail += ", min margin (log) " + fmt(r.worst->margin_log);
  return r.passed() && r.checks == 25 * 28;
}

bool polar_bounds(std::string& detail) {
  auto brick = polar_brick_bound_check(polar_samples(200, kSeed), 6, kBrickPolarConstant);
  const auto h = truncate_base_function(WeightSequence::gevrey(1), 60);
  auto block = polar_block_bound_check(h, polar_block_samples(200, kSeed), 5, kBlockPolarConstant);
  detail = "brick C = 8^5: " + std::to_string(brick.failures) + " failures, empirical C " +
           fmt(brick.empirical_constant) + "; block C = 2*8^5: " + std::to_string(block.failures) +
           " failures, empirical C " + fmt(block.empirical_constant);
  return brick.passed() && block.passed();
}

bool flat_lower(std::string& detail) {
  const auto G = build_gamma(WeightSequence::gevrey(1), EFunction::sqrt(), 64);
  const auto h = truncate_base_function(G.M, flat_terms(12));
  const std::vector<std::size_t> lambdas{G.entries[0].lambda, G.entries[1].lambda};
  auto cert = lower_bound_certificate(G, h, lambdas);
  detail = "lambda in {" + std::to_string(lambdas[0]) + ", " + std::to_string(lambdas[1]) + "}";
  for (const auto& e : cert.entries) {
    detail += "; " + std::to_string(e.lambda) + ": margin (log) " + fmt(e.lhs_log - e.rhs_log) +
              (e.dominant_ok && e.bracket_ok ? ", bracket ok" : ", bracket FAILS");
  }
  return cert.passed();
}

bool flat_upper(std::string& detail) {
  const auto G = build_gamma(WeightSequence::gevrey(1), EFunction::sqrt(), 64);
  const auto h = truncate_base_function(G.M, 60);
  const auto samples = flat_samples(50, kSeed);
  auto cart = upper_bound_sweep(G, h, samples, 5);
  auto polar = polar_upper_bound_sweep(G, h, samples, 5);
  detail = "F: " + std::to_string(cart.failures) + "/" + std::to_string(cart.checks) + " failures (empirical base " +
           fmt(cart.empirical_constant) + " vs 8); G: " + std::to_string(polar.failures) + "/" +
           std::to_string(polar.checks) + " failures (empirical 2C " + fmt(polar.empirical_constant) + ")";
  return cart.passed() && polar.passed();
}

bool sharpness(std::string& detail) {
  const auto G = build_gamma(WeightSequence::gevrey(1), EFunction::sqrt(), 64);
  const auto lambdas = G.lambdas();
  const auto h = truncate_base_function(G.M, flat_terms(static_cast<int>(lambdas.back())));
  auto strict = sharpness_certificate(G, h, WeightSequence::gevrey(1.5), lambdas);
  auto bounded = sharpness_certificate(G, h, G.M.shift(2), lambdas);
  detail = "N = gevrey:1.5 (" + strict.verdict + "): r =";
  for (const auto& r : strict.rows) detail += " " + fmt(r.ratio_root);
  detail += std::string(strict.increasing ? " increasing" : " NOT increasing") + "; N = shift(M,2): max r " +
            fmt(bounded.fitted_constant) + " <= " + fmt(bounded.bound_constant);
  return strict.hypothesis == "strict" && strict.passed() && bounded.hypothesis == "bounded" && bounded.passed();
}

bool counterexample(std::string& detail) {
  const auto S = build_counterexample(8);
  const auto lc = verify_log_convex(S, 5000);
  const auto dc = verify_diff_closed(S, 5000);
  const auto qa = verify_quasianalytic_diag(S, 5000);
  const auto sg = verify_strict_gap(S, 5000);
  bool gap_ok = qa.gap_partial_sums.size() == 8;
  for (std::size_t c = 0; c < qa.gap_partial_sums.size(); ++c)
    gap_ok = gap_ok && qa.gap_partial_sums[c] >= 0.9 * static_cast<double>(c + 1);
  detail = "a_k nondecreasing " + std::string(lc.nondecreasing ? "yes" : "no") + "; sup b_k " + fmt(dc.sup_b) +
           "; gap sum " + fmt(qa.gap_partial_sums.empty() ? 0.0 : qa.gap_partial_sums.back()) +
           " over 8 pairs; identity error " + fmt(sg.max_identity_error, 2) + "; g_k = 1 at k = " +
           (sg.first_exact_one ? std::to_string(*sg.first_exact_one) : "none") + "; min g " + fmt(sg.min_g) +
           " at k = " + std::to_string(sg.argmin);
  return lc.nondecreasing && dc.bounded_by_four && dc.sup_b <= 4 && gap_ok && qa.chain_holds && sg.identity_holds &&
         sg.first_exact_one.has_value() && sg.first_below_tenth.has_value();
}

HighPrecision hp(const Rational& x) {
  return HighPrecision(x.get_num().get_str()) / HighPrecision(x.get_den().get_str());
}

bool oracle_cross_checks(std::string& detail) {
  std::size_t compared = 0, bad = 0;
  auto compare = [&](const PointwiseEvaluator& f, std::array<double, 2> x, double jet_value, Multiindex a,
                     double step) {
    const double fd = finite_difference_check(f, x, a, step);
    ++compared;
    if (!(std::abs(fd - jet_value) <= 1e-6 * std::max(1.0, std::abs(jet_value)))) ++bad;
  };

  // 1 / (c + |x|^2)
  {
    const Rational c(3, 2);
    const std::array<double, 2> x{0.4, -0.3};
    auto jet = cauchy_kernel_jet(c, {to_rational(x[0]), to_rational(x[1])}, 4);
    PointwiseEvaluator f = [&](const HighPrecision& a, const HighPrecision& b) { return 1 / (hp(c) + a * a + b * b); };
    for (auto a : multiindices_up_to(4)) compare(f, x, jet.derivative(a).get_d(), a, 1e-3);
  }
  // brick and its polar composite
  const BrickParams bp{2.0, 3.0, 0.4};
  PointwiseEvaluator brick = [&](const HighPrecision& a, const HighPrecision& b) {
    const HighPrecision rho(bp.rho), d1 = a - rho * HighPrecision(bp.q), d2 = HighPrecision(bp.m) * b;
    return rho * rho / (rho * rho + d1 * d1 + d2 * d2);
  };
  for (std::array<double, 2> x : {std::array<double, 2>{0.8, 0.1}, std::array<double, 2>{-0.5, 0.7}}) {
    auto jet = brick_jet(bp, x, 4);
    for (auto a : multiindices_up_to(4)) compare(brick, x, jet.derivative(a), a, 1e-3);
  }
  {
    PointwiseEvaluator f = [&](const HighPrecision& r, const HighPrecision& t) { return brick(r * cos(t), r * sin(t)); };
    auto jet = polar_brick_jet(bp, 0.7, 0.3, 4);
    for (auto a : multiindices_up_to(4)) compare(f, {0.7, 0.3}, jet.derivative(a), a, 1e-3);
  }
  // truncated base function, a block and its polar composite
  const auto h = truncate_base_function(WeightSequence::gevrey(1), 20);
  std::vector<HighPrecision> w, m;
  for (std::size_t i = 0; i < h.K; ++i) {
    w.push_back(hp((*h.exact_weights)[i]));
    m.push_back(hp((*h.exact_ratios)[i]));
  }
  PointwiseEvaluator hf = [&](const HighPrecision& a, const HighPrecision& b) {
    HighPrecision acc = 0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] / (1 + a * a + m[i] * m[i] * b * b);
    return acc;
  };
  {
    auto jet = h_jet(h, {0.4, 0.1}, 4);
    for (auto a : multiindices_up_to(4)) compare(hf, {0.4, 0.1}, jet.derivative(a), a, 1e-4);
  }
  const BlockParams blk{3.0, 0.5};
  PointwiseEvaluator block = [&](const HighPrecision& a, const HighPrecision& b) {
    const HighPrecision rho(blk.rho);
    return hf(a / rho - HighPrecision(blk.q), b / rho);
  };
  {
    auto jet = block_jet(blk, h, {1.4, 0.05}, 4);
    for (auto a : multiindices_up_to(4)) compare(block, {1.4, 0.05}, jet.derivative(a), a, 1e-4);
  }
  {
    PointwiseEvaluator f = [&](const HighPrecision& r, const HighPrecision& t) { return block(r * cos(t), r * sin(t)); };
    auto jet = polar_block_jet(blk, h, 1.3, 0.1, 4);
    for (auto a : multiindices_up_to(4)) compare(f, {1.3, 0.1}, jet.derivative(a), a, 1e-4);
  }

  // axis closed form against exact jets of the truncated series
  std::size_t axis_checked = 0, axis_bad = 0;
  for (Rational x1 : {Rational(0), Rational(1, 3), Rational(-2)}) {
    auto jet = h_jet_exact(h, {x1, 0}, 8);
    for (unsigned order = 0; order <= 8; ++order) {
      auto d = h_axis_x2_derivative_exact(h, x1, order);
      ++axis_checked;
      if (d.value != jet.derivative({0, static_cast<int>(order)})) ++axis_bad;
    }
  }
  {
    auto jet = block_jet_exact(blk, h, {to_rational(blk.rho * blk.q), 0}, 8);
    for (unsigned order = 0; order <= 8; ++order) {
      ++axis_checked;
      if (block_axis_derivative(blk, h, order).value != jet.derivative({0, static_cast<int>(order)})) ++axis_bad;
    }
  }
  detail = std::to_string(compared - bad) + "/" + std::to_string(compared) + " finite-difference checks within 1e-6; " +
           std::to_string(axis_checked - axis_bad) + "/" + std::to_string(axis_checked) + " exact axis equalities";
  return bad == 0 && axis_bad == 0;
}

bool weights_invariants(std::string& detail) {
  const std::vector<WeightSequence> families{
      WeightSequence::analytic(),  WeightSequence::gevrey(1),
      WeightSequence::gevrey(0.5), WeightSequence::gevrey(2),
      WeightSequence::log_power(std::numbers::e), parse_sequence("counterexample")};
  bool ok = true;
  std::string failed;
  for (const auto& M : families) {
    auto r = square_vs_shift_diagnostic(M, 1000);
    if (!r.inequality_holds || !r.square_below_shift) {
      ok = false;
      failed += " " + M.spec();
    }
  }
  std::vector<std::size_t> evens;
  for (std::size_t k = 2; k <= 200; k += 2) evens.push_back(k);
  const auto d = density_estimate(evens, {100});
  const bool abel = d.samples.size() == 1 && d.samples[0].abel_checked && d.samples[0].abel_equal;
  detail = std::to_string(families.size()) + " families to K = 1000" + (ok ? " hold" : ", failing:" + failed) +
           "; Abel identity at n = 100 " + (abel ? "exact" : "FAILS");
  return ok && abel;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "ostrowski identity", 1, ostrowski_identity},
      {2, "cauchy brick bound", 10, cauchy_brick},
      {3, "base function lower bound", 5, base_lower},
      {4, "base function upper bound", 30, base_upper},
      {5, "polar brick and block bounds", 60, polar_bounds},
      {6, "flat lower-bound certificate", 30, flat_lower},
      {7, "flat upper bounds", 60, flat_upper},
      {8, "sharpness table", 60, sharpness},
      {9, "counterexample properties", 10, counterexample},
      {10, "oracle cross-checks", 30, oracle_cross_checks},
      {11, "weight invariants", 5, weights_invariants},
  };
  return list;
}

CriterionResult run(const Criterion& c) {
  CriterionResult out;
  out.id = c.id;
  out.name = c.name;
  out.limit = c.limit_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.checks_ok = c.run(out.detail);
  } catch (const std::exception& e) {
    out.checks_ok = false;
    out.detail = std::string("error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.passed = out.checks_ok && out.seconds < out.limit;
  return out;
}

std::vector<CriterionResult> run_all(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    out.push_back(run(c));
  }
  return out;
}

std::string format(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << " " << r.name << " (" << std::fixed
     << std::setprecision(2) << r.seconds << " s, limit " << std::setprecision(0) << r.limit << " s)";
  if (r.checks_ok && !r.passed) os << " over time limit";
  os << ": " << r.detail;
  return os.str();
}

}  // namespace dcsharp::acceptance
