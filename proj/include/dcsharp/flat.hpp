#pragma once

// F(x) = sum_{lambda in Lambda} f_{q_lambda, rho_lambda}(x) / (2^lambda phi(1/rho_lambda))
// with rho_n = M_n / M_{n+1}, q_n = E(rho_n) / rho_n, and its polar composite
// G = F o sigma.  The centres x_lambda = (E(rho_lambda), 0) sit on the x1-axis,
// where the x2-derivatives of every block have a closed form.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcsharp/blocks.hpp"
#include "dcsharp/bound_report.hpp"
#include "dcsharp/exact.hpp"
#include "dcsharp/weights.hpp"

namespace dcsharp {

/// Increasing E with E(0) = 0 and E(r)/r -> infinity as r -> 0.
class EFunction {
 public:
  static EFunction sqrt();
  /// E(r) = r^a, 0 < a < 1.
  static EFunction power(double a);
  /// Piecewise linear through (r_i, E_i); must start at (0, 0) and increase.
  static EFunction table(std::vector<std::pair<double, double>> points);
  /// "sqrt" | "power:<a>" | "table:<path>" (two columns r E per line).
  static EFunction parse(std::string_view spec);

  std::string spec() const;
  double eval(double r) const;
  double eval_log(double log_r) const;
  /// Enclosure of E(r) for rational r.
  RationalInterval enclose(const Rational& r) const;

 private:
  enum class Kind { sqrt, power, table };
  Kind kind_ = Kind::sqrt;
  double exponent_ = 0.5;
  std::vector<std::pair<double, double>> table_;
  std::string source_;
};

struct GammaEntry {
  std::size_t lambda = 0;
  double log_rho = 0;      // log(M_lambda / M_{lambda+1})
  double rho = 0;
  double E = 0;            // E(rho), the x1-coordinate of x_lambda
  double q = 0;            // E / rho
  double delta = 0;        // distance from E to the nearest other E in Gamma
  bool interior = false;   // neighbours on both sides
  std::optional<Rational> rho_exact;
  RationalInterval E_enclosure;
  double log_weight = 0;   // log(1 / (2^lambda phi(1/rho)))
  std::optional<Rational> weight_exact;
};

struct GammaData {
  WeightSequence M;
  EFunction E;
  std::size_t lambda_max = 0;
  std::vector<GammaEntry> entries;
  double epsilon = 0;         // min over entries of (rho^2)^{1/lambda}, rounded down
  Rational epsilon_lower;     // exact rational with rho^2 >= epsilon^lambda for every entry
  double B = 0;               // 8^5 / epsilon

  std::vector<std::size_t> lambdas() const;
  /// Index of lambda in entries; UsageError if absent.
  std::size_t index_of(std::size_t lambda) const;
  /// Smallest even integer above lambda_max (first index not represented).
  std::size_t next_lambda() const;
  bool exact() const { return M.has_exact(); }
};

/// Greedy selection over even candidates (default: all even 2..lambda_max):
/// accept lambda when q_lambda > 1 and E(rho_lambda) < E(rho_last)/2.
/// ConstructionError when rho_n does not decrease below 1 or fewer than two
/// indices survive.
GammaData build_gamma(const WeightSequence& M, const EFunction& E, std::size_t lambda_max,
                      std::optional<std::vector<std::size_t>> candidates = std::nullopt);

/// Rebuilds Gamma for a given Lambda, checking evenness, q > 1 and sparsity.
GammaData gamma_from_lambdas(const WeightSequence& M, const EFunction& E, const std::vector<std::size_t>& lambdas,
                             std::size_t lambda_max);

struct DeltaEntry {
  std::size_t lambda = 0;
  double delta = 0;
  double half_E = 0;
  bool interior = false;
  bool gap_ok = true;           // delta >= E/2, certified with enclosures (interior only)
  double hypothesis_rhs = 0;    // B * M_lambda^{-1/lambda}
  bool hypothesis_ok = false;   // delta >= B * M_lambda^{-1/lambda}
};

struct DeltaReport {
  std::vector<DeltaEntry> entries;
  bool gaps_ok = true;
  std::optional<std::size_t> lambda0_in_range;  // first stored lambda from which the hypothesis holds
  std::optional<double> projected_lambda0;      // smallest even lambda with E(rho)/2 >= B M^{-1/lambda}
};

DeltaReport delta_gaps(const GammaData& G);

struct SeriesValueWithTail {
  double value = 0;
  double tail_bound = 0;
};

/// F at x (K-term blocks) with tails from truncation and from indices past lambda_max.
SeriesValueWithTail F_eval(const GammaData& G, const BaseFunctionTruncation& h, std::array<double, 2> x);
SeriesValueWithTail G_eval(const GammaData& G, const BaseFunctionTruncation& h, double r, double theta);
FloatJet F_jet(const GammaData& G, const BaseFunctionTruncation& h, std::array<double, 2> x, int degree);
FloatJet G_jet(const GammaData& G, const BaseFunctionTruncation& h, double r, double theta, int degree);

struct AxisEnclosure {
  std::size_t lambda = 0;        // centre x_lambda
  unsigned order = 0;
  int sign = 1;                  // every term has sign (-1)^{order/2}
  RationalInterval dominant;     // |lambda-term|, partial sum plus series tail
  RationalInterval cross;        // sum of |other stored terms| with their tails
  Rational dropped_tail;         // indices past lambda_max
  RationalInterval magnitude;    // |partial^{order}_{x2} F(x_lambda)|
};

/// Exact enclosure of |partial^{order}_{x2} F(x_lambda, 0)| (order even).
/// The tail past lambda_max assumes the greedy rule continues, so every later
/// centre lies below E(rho_last)/2.
AxisEnclosure F_axis_x2_derivative(const GammaData& G, const BaseFunctionTruncation& h, std::size_t lambda,
                                   unsigned order);

struct AxisLogEnclosure {
  std::size_t lambda = 0;
  unsigned order = 0;
  double dominant_log = 0;
  double lower_log = 0;  // -inf when the tails swamp the partial sum
  double upper_log = 0;
};

/// Same enclosure in log arithmetic, for families without exact values.
AxisLogEnclosure F_axis_x2_derivative_log(const GammaData& G, const BaseFunctionTruncation& h, std::size_t lambda,
                                          unsigned order);

struct LowerBoundEntry {
  std::size_t lambda = 0;
  double lhs_log = 0;             // log of the certified lower bound of |d^lambda F(x_lambda)|
  double rhs_log = 0;             // log(eps^lambda lambda! M_lambda^2 / 4^lambda)
  bool pass = false;
  double dominant_log = 0;        // log of the lambda-term alone (lower end)
  double dominant_bound_log = 0;  // log(lambda! rho^2 M_lambda^2 / 4^lambda)
  bool dominant_ok = false;
  double unweighted_bound_log = 0;  // log(lambda! rho^2 M_lambda^2 / 2^lambda), omits the 2^-lambda weight
  bool unweighted_bound_ok = false;
  bool dominant_identity = false; // lambda! M/((2 rho)^lambda phi(1/rho)) == lambda! rho^2 M^2 / 2^lambda
  double cross_log = 0;           // log of the upper enclosure of cross terms and tails
  double cross_bound_log = 0;     // log(lambda! M_lambda 8^{lambda+3} / delta^lambda)
  bool bracket_ok = false;
  bool hypothesis_ok = false;     // delta >= B M^{-1/lambda} (reported, not required)
};

struct LowerBoundCertificate {
  std::vector<LowerBoundEntry> entries;
  std::size_t terms = 0;
  bool passed() const;
};

/// max(60, 4 * max_order + 16): keeps the axis tails well below the dominant term.
std::size_t flat_terms(int max_order);

/// Exact families only.
LowerBoundCertificate lower_bound_certificate(const GammaData& G, const BaseFunctionTruncation& h,
                                              const std::vector<std::size_t>& lambdas);

/// Sample (r, theta): r log-spaced in [1e-3, 2], theta uniform.
std::vector<std::array<double, 2>> flat_samples(std::size_t n, std::uint64_t seed);

/// |d^alpha F| <= 8^{|alpha|+3} alpha! M_{|alpha|}^2 at x = sigma(sample).
BoundReport upper_bound_sweep(const GammaData& G, const BaseFunctionTruncation& h,
                              const std::vector<std::array<double, 2>>& samples, int max_order);
/// |d^alpha G| <= (2C)^{|alpha|+1} alpha! M_{|alpha|}, C the polar block constant.
BoundReport polar_upper_bound_sweep(const GammaData& G, const BaseFunctionTruncation& h,
                                    const std::vector<std::array<double, 2>>& samples, int max_order,
                                    double C = kBlockPolarConstant, double brick_C = kBrickPolarConstant);

struct SharpnessRow {
  std::size_t lambda = 0;
  double lhs_log = 0;        // log |d^lambda F(x_lambda)| (certified lower end)
  double lhs_upper_log = 0;
  double rhs_log = 0;        // log(lambda! N_lambda)
  double ratio_root = 0;     // r_lambda = (|d^lambda F| / (lambda! N_lambda))^{1/lambda}
  double main_constant = 0;  // (|d^lambda F| / (lambda! M_{2 lambda}))^{1/lambda}
  double implied_bound = 0;  // (8^{lambda+3} M_lambda^2 / N_lambda)^{1/lambda}
};

struct SharpnessCertificate {
  std::string N_spec;
  std::string hypothesis;    // "strict" or "bounded"
  std::string verdict;       // compare(N, shift(M,2)) verdict
  std::size_t compare_K = 0;
  std::vector<SharpnessRow> rows;
  bool increasing = false;   // r_lambda strictly increasing over the rows
  double fitted_constant = 0;  // max r_lambda
  double bound_constant = 0;   // max implied_bound
  bool bounded = false;        // r_lambda <= implied_bound for every row
  bool passed() const;
};

/// UsageError when compare(N, shift(M,2)) says N is not below M^(2)
/// (verdict not-contained or inconclusive).
SharpnessCertificate sharpness_certificate(const GammaData& G, const BaseFunctionTruncation& h,
                                           const WeightSequence& N, const std::vector<std::size_t>& lambdas,
                                           std::size_t compare_K = 0);

}  // namespace dcsharp
