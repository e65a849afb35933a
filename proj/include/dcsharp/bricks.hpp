#pragma once

// The brick u(x) = rho^2 / (rho^2 + (x1 - rho q)^2 + (m x2)^2) and its polar
// composite v(r, theta) = u(r cos theta, r sin theta).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcsharp/bound_report.hpp"
#include "dcsharp/exact.hpp"
#include "dcsharp/jet2.hpp"

namespace dcsharp {

struct BrickParams {
  double q = 1;
  double m = 1;
  double rho = 0.5;

  /// Throws DomainError unless q >= 1, m >= 1, 0 < rho < 1.
  void validate() const;
  std::array<double, 2> center() const { return {rho * q, 0.0}; }
};

using RationalPoint = std::array<Rational, 2>;

double brick_eval(const BrickParams& p, std::array<double, 2> x);
/// Exact jet; parameters are converted to rationals exactly.
ExactJet brick_jet_exact(const BrickParams& p, const RationalPoint& x, int degree);
FloatJet brick_jet(const BrickParams& p, std::array<double, 2> x, int degree);

/// Jet of 1/(c + x1^2 + x2^2); the coefficients are partial^alpha / alpha!.
ExactJet cauchy_kernel_jet(const Rational& c, const RationalPoint& x, int degree);

/// |partial^alpha f / alpha!| <= 8 * 8^|alpha| / (c + |x|^2)^{1 + |alpha|/2} for
/// f = 1/(c + x1^2 + x2^2), all |alpha| <= max_order, compared exactly.
/// Appends one sample to report.
void cauchy_bound_check(BoundReport& report, const Rational& c, const RationalPoint& x, int max_order);
BoundReport cauchy_bound_check(const Rational& c, const RationalPoint& x, int max_order);
/// Random rational (c, x) with a seeded generator.
BoundReport cauchy_bound_sweep(std::size_t samples, int max_order, std::uint64_t seed);

/// |partial^alpha u / alpha!| <= rho^2 m^{alpha_2} 8^{|alpha|+1} (u/rho^2)^{1+|alpha|/2},
/// exactly, at the given rational points.
BoundReport brick_remark_check(const BrickParams& p, const std::vector<RationalPoint>& points, int max_order);

/// Jet of v in the variables (r, theta).
FloatJet polar_brick_jet(const BrickParams& p, double r, double theta, int degree);

struct PolarSample {
  BrickParams params;
  double r = 0;
  double theta = 0;
};

/// r = 0 followed by r log-spaced in [1e-3, 10]; theta uniform in [-pi, pi].
/// Parameters are drawn per sample unless fixed is given.
std::vector<PolarSample> polar_samples(std::size_t n, std::uint64_t seed,
                                       std::optional<BrickParams> fixed = std::nullopt);

inline constexpr double kBrickPolarConstant = 32768.0;  // 8^5

/// |partial^alpha v / alpha!| <= m^{|alpha|} (1 + q rho)^{alpha_2} C^{|alpha|+1}.
/// The empirical constant is the smallest C that would pass on the sample.
BoundReport polar_brick_bound_check(const std::vector<PolarSample>& samples, int max_order,
                                    double C = kBrickPolarConstant);

}  // namespace dcsharp
