#include "dcsharp/blocks.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dcsharp/errors.hpp"
#include "dcsharp/ostrowski.hpp"

namespace dcsharp {

namespace {

void require_exact(const BaseFunctionTruncation& h, const char* what) {
  if (!h.exact())
    throw UsageError(std::string(what) + ": '" + h.M.spec() + "' has no exact values");
}

double log_factorial(Multiindex a) {
  return std::lgamma(a.first + 1.0) + std::lgamma(a.second + 1.0);
}

Rational multi_factorial(Multiindex a) {
  return factorial(static_cast<unsigned long>(a.first)) * factorial(static_cast<unsigned long>(a.second));
}

double safe_log(double x) { return x == 0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(x)); }

double safe_log(const Rational& x) { return x == 0 ? -std::numeric_limits<double>::infinity() : log_abs(x); }

std::string label_of(double a, double b) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << a << "," << b << ")";
  return os.str();
}

// Rescales a jet of h at y = (x1/rho - q, x2/rho) into a jet of f at x.
template <class S>
Jet2<S> rescale(const Jet2<S>& hy, const typename Jet2<S>::Point& x, const S& inv_rho) {
  Jet2<S> out(x, hy.degree());
  S scale(1);
  for (int d = 0; d <= hy.degree(); ++d) {
    for (int j = 0; j <= d; ++j) out.coeff(d - j, j) = hy.coeff(d - j, j) * scale;
    scale *= inv_rho;
  }
  return out;
}

}  // namespace

std::size_t default_terms(int max_order) {
  return std::max<std::size_t>(60, 4 * static_cast<std::size_t>(std::max(max_order, 0)));
}

BaseFunctionTruncation truncate_base_function(const WeightSequence& M, std::size_t K) {
  if (K < 1) throw UsageError("truncate_base_function: K must be >= 1");
  BaseFunctionTruncation h{.M = M, .K = K};
  const bool exact = M.has_exact();
  if (exact) {
    h.exact_weights.emplace();
    h.exact_ratios.emplace();
  }
  const double log2 = std::log(2.0);
  for (std::size_t k = 1; k <= K; ++k) {
    const double log_m = M.log_ratio(k);
    h.log_ratios.push_back(log_m);
    h.ratio_values.push_back(std::exp(log_m));
    if (exact) {
      const Rational m = M.exact_ratio(k);
      const ExactPhiValue p = phi_exact(M, m);
      Rational w = 0;
      if (p.saturated) {
        h.saturated_terms.push_back(k);
      } else {
        w = m * m / (pow(Rational(2), k) * p.value);
        w.canonicalize();
      }
      h.weights.push_back(LogMagnitude::from_rational(w));
      h.weight_values.push_back(w.get_d());
      h.exact_ratios->push_back(m);
      h.exact_weights->push_back(std::move(w));
    } else {
      const PhiValue p = phi_log(M, log_m);
      if (p.saturated) {
        h.saturated_terms.push_back(k);
        h.weights.push_back(LogMagnitude::zero());
        h.weight_values.push_back(0.0);
      } else {
        const double lw = 2 * log_m - static_cast<double>(k) * log2 - p.value.log_abs();
        h.weights.push_back(LogMagnitude::from_log(lw));
        h.weight_values.push_back(std::exp(lw));
      }
    }
  }
  h.tail_bound = LogMagnitude::from_log(-static_cast<double>(K) * log2);
  return h;
}

SeriesValue h_eval(const BaseFunctionTruncation& h, std::array<double, 2> x) {
  long double acc = 0;
  const double a = 1 + x[0] * x[0];
  for (std::size_t i = 0; i < h.K; ++i) {
    const double mx = h.ratio_values[i] * x[1];
    acc += h.weight_values[i] / (a + mx * mx);
  }
  return {static_cast<double>(acc), h.tail_bound.to_double()};
}

Rational h_partial_sum_exact(const BaseFunctionTruncation& h, const RationalPoint& x) {
  require_exact(h, "h_partial_sum_exact");
  Rational acc = 0;
  const Rational a = 1 + x[0] * x[0];
  const Rational x2sq = x[1] * x[1];
  for (std::size_t i = 0; i < h.K; ++i) {
    const Rational& m = (*h.exact_ratios)[i];
    acc += (*h.exact_weights)[i] / (a + m * m * x2sq);
  }
  acc.canonicalize();
  return acc;
}

ExactJet h_jet_exact(const BaseFunctionTruncation& h, const RationalPoint& x, int degree) {
  require_exact(h, "h_jet_exact");
  auto X1 = ExactJet::variable(x, degree, 0);
  auto X2 = ExactJet::variable(x, degree, 1);
  const auto P = X1 * X1 + Rational(1);
  const auto Q = X2 * X2;
  ExactJet acc(x, degree);
  for (std::size_t i = 0; i < h.K; ++i) {
    const Rational& w = (*h.exact_weights)[i];
    if (w == 0) continue;
    const Rational& m = (*h.exact_ratios)[i];
    acc += recip(P + Q * (m * m)) * w;
  }
  for (auto a : multiindices_up_to(degree)) acc.coeff(a.first, a.second).canonicalize();
  return acc;
}

FloatJet h_jet(const BaseFunctionTruncation& h, std::array<double, 2> x, int degree) {
  auto X1 = FloatJet::variable(x, degree, 0);
  auto X2 = FloatJet::variable(x, degree, 1);
  const auto P = X1 * X1 + 1.0;
  const auto Q = X2 * X2;
  FloatJet acc(x, degree);
  for (std::size_t i = 0; i < h.K; ++i) {
    const double w = h.weight_values[i];
    if (w == 0) continue;
    const double m = h.ratio_values[i];
    acc += recip(P + Q * (m * m)) * w;
  }
  return acc;
}

Rational derivative_tail_bound_exact(const BaseFunctionTruncation& h, Multiindex alpha) {
  require_exact(h, "derivative_tail_bound_exact");
  const auto a = static_cast<unsigned long>(alpha.order());
  Rational out = multi_factorial(alpha) * pow(Rational(8), a + 1) *
                 h.M.exact_weight(static_cast<std::size_t>(alpha.second)) / pow(Rational(2), h.K);
  out.canonicalize();
  return out;
}

double derivative_tail_bound_log(const BaseFunctionTruncation& h, Multiindex alpha) {
  return log_factorial(alpha) + (alpha.order() + 1) * std::log(8.0) +
         h.M.log_weight(static_cast<std::size_t>(alpha.second)) - static_cast<double>(h.K) * std::log(2.0);
}

Rational axis_moment_exact(const BaseFunctionTruncation& h, unsigned n) {
  require_exact(h, "axis_moment_exact");
  Rational acc = 0;
  for (std::size_t i = 0; i < h.K; ++i)
    acc += (*h.exact_weights)[i] * pow((*h.exact_ratios)[i], 2ul * n);
  acc.canonicalize();
  return acc;
}

LogMagnitude axis_moment(const BaseFunctionTruncation& h, unsigned n) {
  LogMagnitude acc;
  for (std::size_t i = 0; i < h.K; ++i) {
    if (h.weights[i].is_zero()) continue;
    acc += h.weights[i] * LogMagnitude::from_log(2.0 * n * h.log_ratios[i]);
  }
  return acc;
}

AxisDerivative h_axis_x2_derivative_exact(const BaseFunctionTruncation& h, const Rational& x1, unsigned order) {
  require_exact(h, "h_axis_x2_derivative_exact");
  AxisDerivative out;
  out.order = order;
  if (order % 2) {
    out.symmetric_zero = true;
    out.value = 0;
    out.tail_bound = 0;
    return out;
  }
  const unsigned n = order / 2;
  const Rational A = 1 + x1 * x1;
  const Rational Apow = pow(A, n + 1ul);
  const Rational fact = factorial(order);
  out.value = fact * axis_moment_exact(h, n) / Apow;
  if (n % 2) out.value = -out.value;
  out.tail_bound = fact * h.M.exact_weight(order) / (pow(Rational(2), h.K) * Apow);
  out.value.canonicalize();
  out.tail_bound.canonicalize();
  return out;
}

std::vector<RationalPoint> default_base_grid() {
  const std::vector<Rational> axis = {Rational(-2), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(2)};
  std::vector<RationalPoint> grid;
  for (const auto& a : axis)
    for (const auto& b : axis) grid.push_back({a, b});
  return grid;
}

BoundReport base_upper_check(const BaseFunctionTruncation& h, const std::vector<RationalPoint>& grid, int max_order) {
  BoundReport report;
  report.name = "base";
  report.inequality = "|d^a h(x)| <= 64 8^(|a|+1) a! M_a2 / (1 + |x|^2)^(1 + |a|/2)";
  report.exact = h.exact();
  report.max_order = max_order;
  report.constant = 64;
  report.notes.push_back("K = " + std::to_string(h.K) + " series terms plus tail bound");
  const double log64 = std::log(64.0), log8 = std::log(8.0);
  for (const auto& x : grid) {
    report.begin_sample(label_of(x[0].get_d(), x[1].get_d()), {x[0].get_d(), x[1].get_d()});
    const Rational s = 1 + x[0] * x[0] + x[1] * x[1];
    const double log_s = log_abs(s);
    if (h.exact()) {
      const auto jet = h_jet_exact(h, x, max_order);
      for (auto alpha : multiindices_up_to(max_order)) {
        const auto a = static_cast<unsigned long>(alpha.order());
        const Rational lhs = abs(jet.derivative(alpha)) + derivative_tail_bound_exact(h, alpha);
        const Rational c = 64 * pow(Rational(8), a + 1) * multi_factorial(alpha) *
                           h.M.exact_weight(static_cast<std::size_t>(alpha.second));
        const bool pass = lhs * lhs * pow(s, a + 2) <= c * c;
        report.record(alpha, safe_log(lhs), log_abs(c) - (1.0 + a / 2.0) * log_s, pass);
      }
    } else {
      const auto jet = h_jet(h, {x[0].get_d(), x[1].get_d()}, max_order);
      for (auto alpha : multiindices_up_to(max_order)) {
        const double a = alpha.order();
        const double lhs = log_sum_exp(safe_log(jet.derivative(alpha)), derivative_tail_bound_log(h, alpha));
        const double rhs = log64 + (a + 1) * log8 + log_factorial(alpha) +
                           h.M.log_weight(static_cast<std::size_t>(alpha.second)) - (1 + a / 2) * log_s;
        report.record(alpha, lhs, rhs, lhs <= rhs);
      }
    }
  }
  return report;
}

void BlockParams::validate() const {
  if (!(q >= 1) || !std::isfinite(q)) throw DomainError("block: q must be >= 1");
  if (!(rho > 0 && rho < 1)) throw DomainError("block: rho must lie in (0, 1)");
}

ExactJet block_jet_exact(const BlockParams& bp, const BaseFunctionTruncation& h, const RationalPoint& x, int degree) {
  bp.validate();
  const Rational rho = to_rational(bp.rho), q = to_rational(bp.q);
  const Rational inv = 1 / rho;
  RationalPoint y{x[0] * inv - q, x[1] * inv};
  y[0].canonicalize();
  y[1].canonicalize();
  return rescale<Rational>(h_jet_exact(h, y, degree), x, inv);
}

FloatJet block_jet(const BlockParams& bp, const BaseFunctionTruncation& h, std::array<double, 2> x, int degree) {
  bp.validate();
  const double inv = 1 / bp.rho;
  return rescale<double>(h_jet(h, {x[0] * inv - bp.q, x[1] * inv}, degree), x, inv);
}

AxisDerivative block_axis_derivative(const BlockParams& bp, const BaseFunctionTruncation& h, unsigned order) {
  bp.validate();
  AxisDerivative d = h_axis_x2_derivative_exact(h, 0, order);
  const Rational scale = pow(1 / to_rational(bp.rho), order);
  d.value *= scale;
  d.tail_bound *= scale;
  return d;
}

BoundReport block_upper_check(const BlockParams& bp, const BaseFunctionTruncation& h,
                              const std::vector<RationalPoint>& points, int max_order) {
  bp.validate();
  require_exact(h, "block_upper_check");
  BoundReport report;
  report.name = "block";
  report.inequality = "|d^a f(x)| <= 64 rho^2 8^(|a|+1) a! M_a2 / (|x - p|^2 + rho^2)^(1 + |a|/2)";
  report.exact = true;
  report.max_order = max_order;
  report.constant = 64;
  const Rational rho = to_rational(bp.rho), q = to_rational(bp.q);
  const Rational inv = 1 / rho;
  const Rational px = rho * q;
  for (const auto& x : points) {
    report.begin_sample(label_of(x[0].get_d(), x[1].get_d()), {x[0].get_d(), x[1].get_d()});
    const auto jet = block_jet_exact(bp, h, x, max_order);
    const Rational d = (x[0] - px) * (x[0] - px) + x[1] * x[1] + rho * rho;
    const double log_d = log_abs(d);
    for (auto alpha : multiindices_up_to(max_order)) {
      const auto a = static_cast<unsigned long>(alpha.order());
      const Rational lhs = abs(jet.derivative(alpha)) + pow(inv, a) * derivative_tail_bound_exact(h, alpha);
      const Rational c = 64 * rho * rho * pow(Rational(8), a + 1) * multi_factorial(alpha) *
                         h.M.exact_weight(static_cast<std::size_t>(alpha.second));
      const bool pass = lhs * lhs * pow(d, a + 2) <= c * c;
      report.record(alpha, safe_log(lhs), log_abs(c) - (1.0 + a / 2.0) * log_d, pass);
    }
  }
  return report;
}

std::vector<RationalPoint> block_sample_points(const BlockParams& bp, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = bp.rho * bp.q + bp.rho * u(rng);
    const double b = bp.rho * u(rng);
    out.push_back({to_rational(a), to_rational(b)});
  }
  return out;
}

FloatJet polar_block_jet(const BlockParams& bp, const BaseFunctionTruncation& h, double r, double theta, int degree) {
  bp.validate();
  FloatJet::Point base{r, theta};
  auto R = FloatJet::variable(base, degree, 0);
  auto [S, C] = sin_cos(FloatJet::variable(base, degree, 1));
  const auto X1 = R * C;
  const auto X2 = R * S;
  const double rho2 = bp.rho * bp.rho;
  const auto shifted = X1 + (-(bp.rho * bp.q));
  const auto P = shifted * shifted + rho2;
  const auto Q = X2 * X2;
  FloatJet acc(base, degree);
  for (std::size_t i = 0; i < h.K; ++i) {
    const double w = h.weight_values[i];
    if (w == 0) continue;
    const double m = h.ratio_values[i];
    acc += recip(P + Q * (m * m)) * (w * rho2);
  }
  return acc;
}

std::vector<PolarBlockSample> polar_block_samples(std::size_t n, std::uint64_t seed, std::optional<BlockParams> fixed) {
  std::vector<PolarBlockSample> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> q(1.0, 5.0), rho(0.05, 0.95);
  for (std::size_t i = 0; i < n; ++i) {
    PolarBlockSample s;
    if (fixed) {
      s.params = *fixed;
    } else {
      s.params.q = q(rng);
      s.params.rho = rho(rng);
    }
    if (i == 0) {
      s.r = 0.0;
    } else {
      const double t = n > 2 ? static_cast<double>(i - 1) / static_cast<double>(n - 2) : 0.0;
      s.r = std::pow(10.0, -3.0 + 4.0 * t);
    }
    s.theta = theta(rng);
    out.push_back(s);
  }
  return out;
}

BoundReport polar_block_bound_check(const BaseFunctionTruncation& h, const std::vector<PolarBlockSample>& samples,
                                    int max_order, double C, double brick_C) {
  if (!(C > 0) || !(brick_C > 0)) throw UsageError("polar_block_bound_check: constants must be positive");
  const bool normalized = h.M.has_exact() ? (h.M.exact_weight(0) == 1 && h.M.exact_weight(1) == 1)
                                          : (h.M.log_weight(0) == 0.0 && h.M.log_weight(1) == 0.0);
  if (!normalized)
    throw UsageError("polar_block_bound_check: precondition M_0 = M_1 = 1 fails for '" + h.M.spec() + "'");
  BoundReport report;
  report.name = "polar-block";
  report.inequality = "|d^a g| <= C^(|a|+1) (1 + q rho)^a2 a! M_|a|, g = f(r cos t, r sin t)";
  report.max_order = max_order;
  report.constant = C;
  report.empirical_label = "smallest C sufficient on the sample";
  report.notes.push_back("series tail bounded with brick constant " + std::to_string(brick_C));
  const double logC = std::log(C), logCb = std::log(brick_C), log2 = std::log(2.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const auto jet = polar_block_jet(s.params, h, s.r, s.theta, max_order);
    const double log_shift = std::log1p(s.params.q * s.params.rho);
    report.begin_sample("sample " + std::to_string(i), {s.r, s.theta});
    for (auto alpha : multiindices_up_to(max_order)) {
      const double a = alpha.order();
      const double scale =
          alpha.second * log_shift + log_factorial(alpha) + h.M.log_weight(static_cast<std::size_t>(alpha.order()));
      const double tail = (a + 1) * logCb + scale - static_cast<double>(h.K) * log2;
      const double lhs = log_sum_exp(safe_log(jet.derivative(alpha)), tail);
      const double rhs = (a + 1) * logC + scale;
      report.record(alpha, lhs, rhs, lhs <= rhs);
      const double partial = safe_log(jet.derivative(alpha));
      if (std::isfinite(partial)) report.observe_constant(std::exp((partial - scale) / (a + 1)));
    }
  }
  return report;
}

}  // namespace dcsharp
