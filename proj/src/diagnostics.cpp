#include "dcsharp/diagnostics.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include "dcsharp/errors.hpp"

namespace dcsharp {

std::string to_string(SeriesTrend t) {
  switch (t) {
    case SeriesTrend::diverging_like: return "diverging-like";
    case SeriesTrend::converging_like: return "converging-like";
    case SeriesTrend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(ComparisonVerdict v) {
  switch (v) {
    case ComparisonVerdict::contained: return "contained";
    case ComparisonVerdict::strictly_contained_diagnostic: return "strictly-contained-diagnostic";
    case ComparisonVerdict::not_contained_diagnostic: return "not-contained-diagnostic";
    case ComparisonVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ClosureReport closure_diagnostic(const WeightSequence& M, std::size_t K) {
  if (K < 1) throw UsageError("closure_diagnostic: K must be >= 1");
  ClosureReport out;
  out.K = K;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= K; ++k) {
    const double v = M.log_ratio(k) / static_cast<double>(k);
    if (v > best) {
      best = v;
      out.argsup = k;
    }
  }
  out.sup = LogMagnitude::from_log(best);
  return out;
}

QuasianalyticityReport quasianalyticity_diagnostic(const WeightSequence& M, std::size_t K,
                                                   double threshold) {
  if (K < 8) throw UsageError("quasianalyticity_diagnostic: K must be >= 8");
  if (!(threshold > 0)) throw UsageError("quasianalyticity_diagnostic: threshold must be > 0");
  QuasianalyticityReport out;
  out.K = K;
  out.threshold = threshold;

  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n < K; n *= 2) ns.push_back(n);
  // The last three doublings end exactly at K.
  for (std::size_t d : {K / 8, K / 4, K / 2})
    if (d >= 1) ns.push_back(d);
  ns.push_back(K);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  long double sum = 0;
  std::size_t next = 0;
  for (std::size_t k = 0; k <= K && next < ns.size(); ++k) {
    sum += std::exp(-static_cast<long double>(M.log_ratio(k))) / static_cast<long double>(k + 1);
    if (k == ns[next]) {
      out.ns.push_back(k);
      out.partial_sums.push_back(static_cast<double>(sum));
      ++next;
    }
  }

  auto at = [&](std::size_t n) {
    for (std::size_t i = 0; i < out.ns.size(); ++i)
      if (out.ns[i] == n) return out.partial_sums[i];
    return 0.0;
  };
  for (std::size_t d : {K / 8, K / 4, K / 2}) out.doubling_increments.push_back(at(2 * d) - at(d));
  // 2 * (K/2) may differ from K for odd K; use S_K - S_{K/2} for the last step.
  out.doubling_increments.back() = at(K) - at(K / 2);

  bool all_above = true, all_below = true;
  for (double inc : out.doubling_increments) {
    if (inc < threshold) all_above = false;
    if (inc >= threshold) all_below = false;
  }
  out.trend = all_above ? SeriesTrend::diverging_like
              : all_below ? SeriesTrend::converging_like
                          : SeriesTrend::inconclusive;
  return out;
}

ComparisonReport compare(const WeightSequence& N, const WeightSequence& M, std::size_t K,
                         const CompareOptions& options) {
  if (K < 2) throw UsageError("compare: K must be >= 2");
  ComparisonReport out;
  out.K = K;
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  double at_half = 0, at_end = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double t = (N.log_weight(k) - M.log_weight(k)) / static_cast<double>(k);
    if (t > sup) {
      sup = t;
      out.argsup = k;
    }
    if (t < inf) {
      inf = t;
      out.arginf = k;
    }
    if (k == K / 2) at_half = t;
    if (k == K) at_end = t;
  }
  out.sup_ratio_root = LogMagnitude::from_log(sup);
  out.inf_ratio_root = LogMagnitude::from_log(inf);
  out.growth = std::exp(at_end - at_half);
  if (out.growth >= options.unbounded_growth)
    out.verdict = ComparisonVerdict::not_contained_diagnostic;
  else if (out.growth <= options.decay)
    out.verdict = ComparisonVerdict::strictly_contained_diagnostic;
  else if (out.growth <= options.bounded_growth)
    out.verdict = ComparisonVerdict::contained;
  else
    out.verdict = ComparisonVerdict::inconclusive;
  return out;
}

SquareVsShiftReport square_vs_shift_diagnostic(const WeightSequence& M, std::size_t K,
                                               double tolerance) {
  if (K < 1) throw UsageError("square_vs_shift_diagnostic: K must be >= 1");
  SquareVsShiftReport out;
  out.K = K;
  out.log_inf_first = std::numeric_limits<double>::infinity();
  out.log_inf_second = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double lk = M.log_weight(k);
    const double l2k = M.log_weight(2 * k);
    // Scaled by k: k log s1 = (k+1) log M_k - k log M_{k+1}, k log s2 = 2 log M_k - log M_{2k}.
    const double first_k = (kd + 1) * lk - kd * M.log_weight(k + 1);
    const double second_k = 2 * lk - l2k;
    out.log_first.push_back(first_k / kd);
    out.log_second.push_back(second_k / kd);
    out.log_inf_first = std::min(out.log_inf_first, first_k / kd);
    if (second_k / kd < out.log_inf_second) {
      out.log_inf_second = second_k / kd;
      out.arginf_second = k;
    }
    const double slack = tolerance * (1 + std::abs(l2k));
    if (second_k > first_k + slack) {
      out.inequality_holds = false;
      out.violations.push_back(k);
    }
    if (second_k > slack) out.square_below_shift = false;
  }
  return out;
}

std::vector<std::size_t> lambda_eps(const WeightSequence& M, double eps, std::size_t K) {
  if (!(eps > 0 && eps < 1)) throw UsageError("lambda_eps: eps must lie in (0, 1)");
  std::vector<std::size_t> out;
  const double cut = std::log1p(-eps);
  for (std::size_t k = 1; k <= K; ++k) {
    const double v = (2 * M.log_weight(k) - M.log_weight(2 * k)) / (2.0 * static_cast<double>(k));
    if (v < cut) out.push_back(k);
  }
  return out;
}

}  // namespace dcsharp
