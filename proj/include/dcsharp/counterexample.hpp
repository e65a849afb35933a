#pragma once

// A log-convex M with C_M closed under differentiation, C_{M^(2)}
// quasianalytic, and C_{M^2} strictly smaller than C_{M^(2)}.
//
// v_0 = 1, v_n = prod_{j<=n} (1 + 1/sqrt j).  L_k = v_n on the block
// lambda_n <= k < lambda_{n+1} and M_k = L_1 L_2 ... L_k.  The index set is
//   0, 4, 6, ..., 2w+2 = mu_1                          (warm-up)
//   mu_c, mu_c + 2, ..., mu_c + 2(s-1), 2 mu_c          (cluster c, s = index of mu_c)
//   mu_{c+1} with log mu_{c+1} - log(2 mu_c) >= v^2     (gap after the cluster)
// so the block index doubles between mu_c and 2 mu_c and (L_bar_k/L_bar_2k)^2
// is small at k = mu_c.  Entries past 2^62 are kept in the log domain only.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcsharp/weights.hpp"

namespace dcsharp {

enum class LambdaRole { origin, warmup, cluster_start, packed, doubled, terminal };
std::string to_string(LambdaRole r);

struct LambdaEntry {
  std::optional<std::uint64_t> value;  // absent beyond 2^62
  double log_value = 0;                // log lambda_n; -inf for lambda_0 = 0
  double log_gap = 0;                  // log lambda_{n+1} - log lambda_n; NaN for the last entry
  int cluster = 0;                     // 0 for origin/warm-up
  LambdaRole role = LambdaRole::origin;
};

struct LambdaSchedule {
  std::size_t pairs = 0;
  std::size_t warmup = 0;
  std::vector<LambdaEntry> entries;
  std::vector<double> log_v;               // log v_n, one per entry
  std::vector<std::size_t> cluster_start;  // entry index of mu_c
  std::vector<std::size_t> doubled;        // entry index of 2 mu_c
  std::size_t integer_prefix = 0;          // entries [0, integer_prefix) carry a value

  /// Pairs (mu, 2 mu) present in Lambda, i.e. a witness set for Lambda cap 2 Lambda.
  std::vector<std::pair<std::size_t, std::size_t>> doubled_pairs() const;
};

inline constexpr std::size_t kDefaultPairs = 8;
inline constexpr std::size_t kDefaultWarmup = 10;

/// log v_n for n = 0..count-1.
std::vector<double> slow_sequence_log(std::size_t count);

/// Throws HorizonError if the gaps leave double range (roughly pairs > 11).
LambdaSchedule build_lambda(std::size_t pairs, std::size_t warmup = kDefaultWarmup);

class CounterexampleFamily final : public WeightFamily {
 public:
  explicit CounterexampleFamily(LambdaSchedule schedule);

  std::string spec() const override;
  double log_weight(std::size_t k) const override;
  double log_ratio(std::size_t k) const override;

  const LambdaSchedule& schedule() const { return schedule_; }
  /// Block n with lambda_n <= k < lambda_{n+1}.
  std::size_t block_of(std::size_t k) const;
  /// log L_k.
  double log_L(std::size_t k) const { return schedule_.log_v[block_of(k)]; }
  /// log M_k for the literal M_k = L_k^k (not log-convex; diagnostic only).
  double literal_log_weight(std::size_t k) const;

 private:
  LambdaSchedule schedule_;
  std::vector<double> q_;  // log M_{lambda_n - 1} for integer entries n >= 1
};

struct CounterexampleSequence {
  std::shared_ptr<const CounterexampleFamily> family;
  WeightSequence sequence;
};

CounterexampleSequence build_counterexample(std::size_t pairs = kDefaultPairs,
                                            std::size_t warmup = kDefaultWarmup);

struct SlowSequenceReport {
  std::size_t count = 0;
  bool increasing = true;
  bool ratio_decreasing_to_one = true;  // v_{n+1}/v_n = 1 + 1/sqrt(n+1) decreases
  bool doubling_ratio_increasing = true;  // v_{2n}/v_n over the tested range
  double last_doubling_log_ratio = 0;
};
SlowSequenceReport verify_slow_sequence(std::size_t count);

struct LogConvexCheck {
  std::size_t K = 0;
  bool nondecreasing = true;
  std::optional<std::size_t> first_violation;
  std::size_t boundaries_checked = 0;  // k = lambda_n within range
  bool constant_within_blocks = true;
  bool generic_validation = true;  // WeightSequence log-convexity scan agrees
};
LogConvexCheck verify_log_convex(const CounterexampleSequence& S, std::size_t K);

struct DiffClosedCheck {
  std::size_t K = 0;
  double sup_b = 0;  // sup of b_k = (M_{k+1}/M_k)^{1/k}
  std::size_t argsup = 0;
  double max_boundary_jump_sq = 0;  // max (v_n/v_{n-1})^2 over entries in range
  bool bounded_by_four = true;
  std::size_t step_bound_violations = 0;  // k with b_k > (L_{k+1}/L_k)^2
};
DiffClosedCheck verify_diff_closed(const CounterexampleSequence& S, std::size_t K);

struct BlockChainTerm {
  std::size_t block = 0;
  std::uint64_t lambda_lo = 0;
  std::uint64_t lambda_hi = 0;
  double chunk_sum = 0;    // sum_{n = lambda_lo/2}^{lambda_hi/2 - 1} 1/(n Lbar_{2n}^2)
  double lower_bound = 0;  // (log lambda_hi - log lambda_lo) / v_block^2
  bool holds = true;
};

struct QuasianalyticCheck {
  std::size_t K = 0;
  std::vector<std::size_t> ns;
  std::vector<double> direct_partial_sums;  // sum_{n<=N} 1/(n Lbar_{2n}^2)
  std::vector<BlockChainTerm> chain;
  bool chain_holds = true;
  std::vector<double> gap_partial_sums;  // gap series through cluster c, c = 1..pairs
  double min_sum_per_pair = 0;
  std::string trend;
};
QuasianalyticCheck verify_quasianalytic_diag(const CounterexampleSequence& S, std::size_t K);

struct StrictGapCheck {
  std::size_t K = 0;
  double max_identity_error = 0;
  bool identity_holds = true;
  bool within_unit_interval = true;
  std::optional<std::size_t> first_exact_one;
  std::size_t exact_one_count = 0;
  double min_g = 1;
  std::size_t argmin = 0;
  std::optional<std::size_t> first_below_tenth;
};
StrictGapCheck verify_strict_gap(const CounterexampleSequence& S, std::size_t K, double tolerance = 1e-12);

struct LiteralDiagnostic {
  std::size_t K = 0;
  std::optional<std::size_t> first_violation;  // first k where the literal L_k^k fails log-convexity
};
LiteralDiagnostic literal_power_diagnostic(const CounterexampleSequence& S, std::size_t K);

struct CounterexampleRow {
  std::size_t k;
  double a_k;
  double b_k;
  double g_k;
};
std::vector<CounterexampleRow> counterexample_rows(const CounterexampleSequence& S, std::size_t K);

}  // namespace dcsharp
