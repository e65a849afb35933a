#include "dcsharp/bricks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <limits>
#include <sstream>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

template <class S>
Jet2<S> brick_jet_generic(const S& q, const S& m, const S& rho, const typename Jet2<S>::Point& x, int degree) {
  auto X1 = Jet2<S>::variable(x, degree, 0);
  auto X2 = Jet2<S>::variable(x, degree, 1);
  const S rho2 = rho * rho;
  auto shifted = X1 + S(-(rho * q));
  auto scaled = X2 * m;
  auto den = shifted * shifted + scaled * scaled + rho2;
  return recip(den) * rho2;
}

std::string point_label(double a, double b) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << a << "," << b << ")";
  return os.str();
}

double log8() { return std::log(8.0); }

}  // namespace

void BrickParams::validate() const {
  if (!(q >= 1) || !std::isfinite(q)) throw DomainError("brick: q must be >= 1");
  if (!(m >= 1) || !std::isfinite(m)) throw DomainError("brick: m must be >= 1");
  if (!(rho > 0 && rho < 1)) throw DomainError("brick: rho must lie in (0, 1)");
}

double brick_eval(const BrickParams& p, std::array<double, 2> x) {
  p.validate();
  const double d1 = x[0] - p.rho * p.q;
  const double d2 = p.m * x[1];
  const double r2 = p.rho * p.rho;
  return r2 / (r2 + d1 * d1 + d2 * d2);
}

ExactJet brick_jet_exact(const BrickParams& p, const RationalPoint& x, int degree) {
  p.validate();
  return brick_jet_generic<Rational>(to_rational(p.q), to_rational(p.m), to_rational(p.rho), x, degree);
}

FloatJet brick_jet(const BrickParams& p, std::array<double, 2> x, int degree) {
  p.validate();
  return brick_jet_generic<double>(p.q, p.m, p.rho, x, degree);
}

ExactJet cauchy_kernel_jet(const Rational& c, const RationalPoint& x, int degree) {
  if (c <= 0) throw UsageError("cauchy kernel: c must be positive");
  auto X1 = ExactJet::variable(x, degree, 0);
  auto X2 = ExactJet::variable(x, degree, 1);
  return recip(X1 * X1 + X2 * X2 + c);
}

void cauchy_bound_check(BoundReport& report, const Rational& c, const RationalPoint& x, int max_order) {
  const auto jet = cauchy_kernel_jet(c, x, max_order);
  const Rational s = c + x[0] * x[0] + x[1] * x[1];
  const double log_s = log_abs(s);
  report.begin_sample("c=" + to_string(c) + " x=(" + to_string(x[0]) + "," + to_string(x[1]) + ")",
                      {x[0].get_d(), x[1].get_d()});
  for (const auto& alpha : multiindices_up_to(max_order)) {
    const Rational& coef = jet.coeff(alpha);
    const auto a = static_cast<unsigned long>(alpha.order());
    // coef^2 s^{2+|alpha|} <= 64^{|alpha|+1}
    const bool pass = coef * coef * pow(s, a + 2) <= pow(Rational(64), a + 1);
    const double lhs = coef == 0 ? -std::numeric_limits<double>::infinity() : log_abs(coef);
    const double rhs = static_cast<double>(a + 1) * log8() - (1.0 + static_cast<double>(a) / 2) * log_s;
    report.record(alpha, lhs, rhs, pass);
    if (a >= 1 && coef != 0)
      report.observe_constant(std::exp((lhs + (1.0 + static_cast<double>(a) / 2) * log_s - log8()) /
                                       static_cast<double>(a)));
  }
}

BoundReport cauchy_bound_check(const Rational& c, const RationalPoint& x, int max_order) {
  BoundReport report;
  report.name = "cauchy-kernel";
  report.inequality = "|d^a f / a!| <= 8 * 8^|a| / (c + |x|^2)^(1 + |a|/2), f = 1/(c + x1^2 + x2^2)";
  report.exact = true;
  report.max_order = max_order;
  report.constant = 8;
  report.empirical_label = "smallest B with 8 * B^|a| sufficient";
  cauchy_bound_check(report, c, x, max_order);
  return report;
}

BoundReport cauchy_bound_sweep(std::size_t samples, int max_order, std::uint64_t seed) {
  BoundReport report;
  report.name = "cauchy-kernel";
  report.inequality = "|d^a f / a!| <= 8 * 8^|a| / (c + |x|^2)^(1 + |a|/2), f = 1/(c + x1^2 + x2^2)";
  report.exact = true;
  report.seed = seed;
  report.max_order = max_order;
  report.constant = 8;
  report.empirical_label = "smallest B with 8 * B^|a| sufficient";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num_c(1, 400), num_x(-200, 200), den(1, 40);
  for (std::size_t i = 0; i < samples; ++i) {
    Rational c(num_c(rng), den(rng));
    Rational x1(num_x(rng), den(rng)), x2(num_x(rng), den(rng));
    c.canonicalize();
    x1.canonicalize();
    x2.canonicalize();
    cauchy_bound_check(report, c, {x1, x2}, max_order);
  }
  return report;
}

BoundReport brick_remark_check(const BrickParams& p, const std::vector<RationalPoint>& points, int max_order) {
  p.validate();
  BoundReport report;
  report.name = "brick";
  report.inequality = "|d^a u / a!| <= rho^2 m^a2 8^(|a|+1) (u/rho^2)^(1 + |a|/2)";
  report.exact = true;
  report.max_order = max_order;
  report.constant = 8;
  const Rational rho = to_rational(p.rho), m = to_rational(p.m);
  const Rational rho2 = rho * rho;
  for (const auto& x : points) {
    const auto jet = brick_jet_exact(p, x, max_order);
    const Rational ratio = jet.value() / rho2;  // u / rho^2
    report.begin_sample(point_label(x[0].get_d(), x[1].get_d()), {x[0].get_d(), x[1].get_d()});
    for (const auto& alpha : multiindices_up_to(max_order)) {
      const Rational& coef = jet.coeff(alpha);
      const auto a = static_cast<unsigned long>(alpha.order());
      const auto a2 = static_cast<unsigned long>(alpha.second);
      const Rational rhs2 = rho2 * rho2 * pow(m, 2 * a2) * pow(Rational(64), a + 1) * pow(ratio, a + 2);
      const bool pass = coef * coef <= rhs2;
      const double lhs = coef == 0 ? -std::numeric_limits<double>::infinity() : log_abs(coef);
      report.record(alpha, lhs, 0.5 * log_abs(rhs2), pass);
    }
  }
  return report;
}

FloatJet polar_brick_jet(const BrickParams& p, double r, double theta, int degree) {
  p.validate();
  FloatJet::Point base{r, theta};
  auto R = FloatJet::variable(base, degree, 0);
  auto [S, C] = sin_cos(FloatJet::variable(base, degree, 1));
  auto X1 = R * C;
  auto X2 = R * S;
  auto shifted = X1 + (-(p.rho * p.q));
  auto scaled = X2 * p.m;
  const double rho2 = p.rho * p.rho;
  return recip(shifted * shifted + scaled * scaled + rho2) * rho2;
}

std::vector<PolarSample> polar_samples(std::size_t n, std::uint64_t seed, std::optional<BrickParams> fixed) {
  std::vector<PolarSample> out;
  out.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> q(1.0, 5.0), m(1.0, 8.0), rho(0.05, 0.95);
  for (std::size_t i = 0; i < n; ++i) {
    PolarSample s;
    if (fixed) {
      s.params = *fixed;
    } else {
      s.params.q = q(rng);
      s.params.m = m(rng);
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

BoundReport polar_brick_bound_check(const std::vector<PolarSample>& samples, int max_order, double C) {
  if (!(C > 0)) throw UsageError("polar_brick_bound_check: C must be positive");
  BoundReport report;
  report.name = "polar-brick";
  report.inequality = "|d^a v / a!| <= m^|a| (1 + q rho)^a2 C^(|a|+1), v = u(r cos t, r sin t)";
  report.max_order = max_order;
  report.constant = C;
  report.empirical_label = "smallest C sufficient on the sample";
  const double logC = std::log(C);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const auto jet = polar_brick_jet(s.params, s.r, s.theta, max_order);
    const double log_m = std::log(s.params.m);
    const double log_shift = std::log1p(s.params.q * s.params.rho);
    report.begin_sample("sample " + std::to_string(i), {s.r, s.theta});
    for (const auto& alpha : multiindices_up_to(max_order)) {
      const double coef = std::abs(jet.coeff(alpha));
      const double a = alpha.order();
      const double scale = a * log_m + alpha.second * log_shift;
      const double rhs = scale + (a + 1) * logC;
      const double lhs = coef == 0 ? -std::numeric_limits<double>::infinity() : std::log(coef);
      report.record(alpha, lhs, rhs, lhs <= rhs);
      if (coef > 0) report.observe_constant(std::exp((lhs - scale) / (a + 1)));
    }
  }
  return report;
}

}  // namespace dcsharp
