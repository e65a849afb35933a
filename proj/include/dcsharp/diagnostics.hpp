#pragma once

// Numerical diagnostics on weight sequences.  Every verdict here is a finite
// horizon diagnostic: divergence of a series or boundedness of a sequence is
// not decidable from finitely many terms, so reports carry the horizon K.

#include <cstddef>
#include <string>
#include <vector>

#include "dcsharp/log_magnitude.hpp"
#include "dcsharp/weights.hpp"

namespace dcsharp {

struct ClosureReport {
  std::size_t K = 0;
  LogMagnitude sup;          // sup_{1<=k<=K} m_k^{1/k}
  std::size_t argsup = 0;
};

/// sup over 1 <= k <= K of (M_{k+1}/M_k)^{1/k}.
ClosureReport closure_diagnostic(const WeightSequence& M, std::size_t K);

enum class SeriesTrend { diverging_like, converging_like, inconclusive };
std::string to_string(SeriesTrend t);

struct QuasianalyticityReport {
  std::size_t K = 0;
  double threshold = 0.05;
  std::vector<std::size_t> ns;       // log-spaced sample points, last one is K
  std::vector<double> partial_sums;  // S_n = sum_{k<=n} M_k / ((k+1) M_{k+1})
  std::vector<double> doubling_increments;  // S_n - S_{n/2} for the last three doublings
  SeriesTrend trend = SeriesTrend::inconclusive;
};

/// Requires K >= 8 so that three doublings are available.
QuasianalyticityReport quasianalyticity_diagnostic(const WeightSequence& M, std::size_t K,
                                                   double threshold = 0.05);

enum class ComparisonVerdict {
  contained,
  strictly_contained_diagnostic,
  not_contained_diagnostic,
  inconclusive,
};
std::string to_string(ComparisonVerdict v);

struct CompareOptions {
  // Growth of t_k = (N_k/M_k)^{1/k} from k = K/2 to k = K.
  double unbounded_growth = 1.5;  // at or above: not contained
  double bounded_growth = 1.05;   // at or below: contained
  double decay = 0.75;            // at or below: strictly contained
};

struct ComparisonReport {
  std::size_t K = 0;
  LogMagnitude sup_ratio_root;
  LogMagnitude inf_ratio_root;
  std::size_t argsup = 0;
  std::size_t arginf = 0;
  double growth = 1.0;  // t_K / t_{K/2}
  ComparisonVerdict verdict = ComparisonVerdict::inconclusive;
};

/// Compares C_N against C_M via t_k = (N_k/M_k)^{1/k}, 1 <= k <= K (K >= 2).
ComparisonReport compare(const WeightSequence& N, const WeightSequence& M, std::size_t K,
                         const CompareOptions& options = {});

struct SquareVsShiftReport {
  std::size_t K = 0;
  std::vector<double> log_first;   // log of M_k^{1+1/k}/M_{k+1}
  std::vector<double> log_second;  // log of (M_k^2/M_{2k})^{1/k}
  double log_inf_first = 0;
  double log_inf_second = 0;
  std::size_t arginf_second = 0;
  bool inequality_holds = true;    // second <= first at every k
  std::vector<std::size_t> violations;
  bool square_below_shift = true;  // M_k^2 <= M_{2k} at every k
};

SquareVsShiftReport square_vs_shift_diagnostic(const WeightSequence& M, std::size_t K,
                                               double tolerance = 1e-12);

/// {1 <= k <= K : (M_k^2/M_{2k})^{1/(2k)} < 1 - eps}.
std::vector<std::size_t> lambda_eps(const WeightSequence& M, double eps, std::size_t K);

}  // namespace dcsharp
