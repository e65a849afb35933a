#pragma once

// Base function h(x) = sum_{k>=1} w_k / (1 + x1^2 + (m_k x2)^2) with
// w_k = m_k^2 / (2^k phi(m_k)), its rescaled translates f(x) = h(x/rho - q)
// ("blocks") and the polar composites g = f o sigma.  Every evaluation keeps
// K series terms and carries a rigorous bound for the rest.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcsharp/bound_report.hpp"
#include "dcsharp/bricks.hpp"
#include "dcsharp/exact.hpp"
#include "dcsharp/jet2.hpp"
#include "dcsharp/log_magnitude.hpp"
#include "dcsharp/weights.hpp"

namespace dcsharp {

struct BaseFunctionTruncation {
  WeightSequence M;
  std::size_t K = 0;
  std::vector<LogMagnitude> weights{};     // w_k for k = 1..K at index k-1 (zero when phi saturates)
  std::vector<double> log_ratios{};        // log m_k, same indexing
  std::vector<double> weight_values{};     // w_k as doubles (may underflow to 0)
  std::vector<double> ratio_values{};      // m_k as doubles
  std::optional<std::vector<Rational>> exact_weights{};
  std::optional<std::vector<Rational>> exact_ratios{};
  std::vector<std::size_t> saturated_terms{};
  LogMagnitude tail_bound{};  // sum_{k>K} w_k <= 2^-K

  bool exact() const { return exact_weights.has_value(); }
};

/// K >= 1.  Exact weights are built when M has exact values.
BaseFunctionTruncation truncate_base_function(const WeightSequence& M, std::size_t K);
/// max(60, 4 * max_order).
std::size_t default_terms(int max_order);

struct SeriesValue {
  double value = 0;
  double tail_bound = 0;
};

SeriesValue h_eval(const BaseFunctionTruncation& h, std::array<double, 2> x);
/// Exact K-term partial sum at a rational point (exact truncations only).
Rational h_partial_sum_exact(const BaseFunctionTruncation& h, const RationalPoint& x);
ExactJet h_jet_exact(const BaseFunctionTruncation& h, const RationalPoint& x, int degree);
FloatJet h_jet(const BaseFunctionTruncation& h, std::array<double, 2> x, int degree);

/// Bound on sum_{k>K} |partial^alpha of the k-th term|:
/// alpha! 8^{|alpha|+1} M_{alpha_2} 2^-K.
Rational derivative_tail_bound_exact(const BaseFunctionTruncation& h, Multiindex alpha);
double derivative_tail_bound_log(const BaseFunctionTruncation& h, Multiindex alpha);

/// S_n = sum_{k<=K} w_k m_k^{2n}.
Rational axis_moment_exact(const BaseFunctionTruncation& h, unsigned n);
LogMagnitude axis_moment(const BaseFunctionTruncation& h, unsigned n);

struct AxisDerivative {
  unsigned order = 0;
  bool symmetric_zero = false;  // odd order: zero by x2 -> -x2 symmetry, series not evaluated
  Rational value;               // partial sum
  Rational tail_bound;          // |true - value| <= tail_bound
};

/// partial^{order}_{x2} h(x1, 0) = (-1)^n (2n)! S_n / (1 + x1^2)^{n+1}, order = 2n.
AxisDerivative h_axis_x2_derivative_exact(const BaseFunctionTruncation& h, const Rational& x1, unsigned order);

/// Prop. (i): |partial^alpha h(x)| <= 64 8^{|alpha|+1} alpha! M_{alpha_2} / (1 + |x|^2)^{1+|alpha|/2}.
BoundReport base_upper_check(const BaseFunctionTruncation& h, const std::vector<RationalPoint>& grid, int max_order);
/// 5 x 5 grid over {-2, -1/2, 0, 1/2, 2}^2.
std::vector<RationalPoint> default_base_grid();

struct BlockParams {
  double q = 1;
  double rho = 0.5;

  void validate() const;
  std::array<double, 2> center() const { return {rho * q, 0.0}; }
};

ExactJet block_jet_exact(const BlockParams& bp, const BaseFunctionTruncation& h, const RationalPoint& x, int degree);
FloatJet block_jet(const BlockParams& bp, const BaseFunctionTruncation& h, std::array<double, 2> x, int degree);
/// partial^{order}_{x2} f(p) = rho^{-order} partial^{order}_{x2} h(0, 0).
AxisDerivative block_axis_derivative(const BlockParams& bp, const BaseFunctionTruncation& h, unsigned order);

/// |partial^alpha f(x)| <= 64 rho^2 8^{|alpha|+1} alpha! M_{alpha_2} / (|x - p|^2 + rho^2)^{1+|alpha|/2}.
BoundReport block_upper_check(const BlockParams& bp, const BaseFunctionTruncation& h,
                              const std::vector<RationalPoint>& points, int max_order);
/// Points p + rho * (s, t) with s, t uniform in [-3, 3], rounded to rationals.
std::vector<RationalPoint> block_sample_points(const BlockParams& bp, std::size_t n, std::uint64_t seed);

FloatJet polar_block_jet(const BlockParams& bp, const BaseFunctionTruncation& h, double r, double theta, int degree);

struct PolarBlockSample {
  BlockParams params;
  double r = 0;
  double theta = 0;
};

std::vector<PolarBlockSample> polar_block_samples(std::size_t n, std::uint64_t seed,
                                                  std::optional<BlockParams> fixed = std::nullopt);

inline constexpr double kBlockPolarConstant = 65536.0;  // 8^5 * 2

/// |partial^alpha g| <= C^{|alpha|+1} (1 + q rho)^{alpha_2} alpha! M_{|alpha|}.
/// Requires M_0 = M_1 = 1 (UsageError otherwise).  The truncation tail uses
/// the brick constant brick_C.
BoundReport polar_block_bound_check(const BaseFunctionTruncation& h, const std::vector<PolarBlockSample>& samples,
                                    int max_order, double C = kBlockPolarConstant,
                                    double brick_C = kBrickPolarConstant);

}  // namespace dcsharp
