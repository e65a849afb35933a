#include "dcsharp/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

constexpr std::uint64_t kIntegerLimit = std::uint64_t{1} << 62;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(LambdaRole r) {
  switch (r) {
    case LambdaRole::origin: return "origin";
    case LambdaRole::warmup: return "warmup";
    case LambdaRole::cluster_start: return "cluster-start";
    case LambdaRole::packed: return "packed";
    case LambdaRole::doubled: return "doubled";
    case LambdaRole::terminal: return "terminal";
  }
  return "origin";
}

std::vector<std::pair<std::size_t, std::size_t>> LambdaSchedule::doubled_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < cluster_start.size(); ++c) out.emplace_back(cluster_start[c], doubled[c]);
  return out;
}

std::vector<double> slow_sequence_log(std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  double acc = 0;
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) acc += std::log1p(1.0 / std::sqrt(static_cast<double>(n)));
    out.push_back(acc);
  }
  return out;
}

LambdaSchedule build_lambda(std::size_t pairs, std::size_t warmup) {
  if (pairs < 1) throw UsageError("build_lambda: need at least one pair");
  if (warmup < 1) throw UsageError("build_lambda: warm-up length must be >= 1");
  LambdaSchedule s;
  s.pairs = pairs;
  s.warmup = warmup;
  auto& e = s.entries;

  // log v_n is needed while the schedule grows; extend lazily.
  std::vector<double> log_v = slow_sequence_log(64);
  auto lv = [&](std::size_t n) {
    if (n >= log_v.size()) log_v = slow_sequence_log(std::max(n + 1, 2 * log_v.size()));
    return log_v[n];
  };

  auto push_int = [&](std::uint64_t value, LambdaRole role, int cluster) {
    LambdaEntry entry;
    entry.value = value;
    entry.log_value = std::log(static_cast<double>(value));
    entry.role = role;
    entry.cluster = cluster;
    e.push_back(entry);
  };

  LambdaEntry origin;
  origin.value = 0;
  origin.log_value = -std::numeric_limits<double>::infinity();
  e.push_back(origin);
  for (std::size_t i = 1; i <= warmup; ++i) push_int(2 * i + 2, LambdaRole::warmup, 0);
  e.back().role = LambdaRole::cluster_start;
  e.back().cluster = 1;

  for (std::size_t c = 1; c <= pairs; ++c) {
    const std::size_t start = e.size() - 1;  // index of mu_c
    const std::size_t idx = start;
    s.cluster_start.push_back(start);
    const LambdaEntry mu = e[start];
    const int cl = static_cast<int>(c);
    // Packed intermediates mu + 2i, then 2 mu at index 2 * idx.
    for (std::size_t i = 1; i + 1 <= idx; ++i) {
      if (mu.value) {
        push_int(*mu.value + 2 * i, LambdaRole::packed, cl);
      } else {
        LambdaEntry entry;
        entry.role = LambdaRole::packed;
        entry.cluster = cl;
        entry.log_value = mu.log_value + std::log1p(2.0 * static_cast<double>(i) * std::exp(-mu.log_value));
        e.push_back(entry);
      }
    }
    if (mu.value && *mu.value < kIntegerLimit / 2) {
      push_int(2 * *mu.value, LambdaRole::doubled, cl);
    } else {
      LambdaEntry entry;
      entry.role = LambdaRole::doubled;
      entry.cluster = cl;
      entry.log_value = mu.log_value + std::log(2.0);
      e.push_back(entry);
    }
    s.doubled.push_back(e.size() - 1);

    // Next cluster start: log mu_{c+1} - log(2 mu_c) >= v_n^2, n = index of 2 mu_c.
    const std::size_t n = e.size() - 1;
    const double gap = std::exp(2 * lv(n));
    if (!std::isfinite(gap))
      throw HorizonError("build_lambda: gap exp(v_" + std::to_string(n) + "^2) overflows after " +
                         std::to_string(c - 1) + " complete pairs");
    const LambdaEntry& twice = e.back();
    LambdaEntry next;
    next.role = c == pairs ? LambdaRole::terminal : LambdaRole::cluster_start;
    next.cluster = c == pairs ? 0 : cl + 1;
    bool integral = false;
    if (twice.value && gap < 40.0) {
      // Smallest even integer with log(next) - log(2 mu) >= gap.
      const double target = static_cast<double>(*twice.value) * std::exp(gap);
      if (target < static_cast<double>(kIntegerLimit)) {
        auto candidate = static_cast<std::uint64_t>(std::ceil(target));
        if (candidate % 2) ++candidate;
        while (std::log(static_cast<double>(candidate)) - twice.log_value < gap) candidate += 2;
        next.value = candidate;
        next.log_value = std::log(static_cast<double>(candidate));
        integral = true;
      }
    }
    if (!integral) next.log_value = twice.log_value + gap;
    if (!std::isfinite(next.log_value))
      throw HorizonError("build_lambda: log lambda leaves double range at pair " + std::to_string(c));
    e.push_back(next);
  }

  // Gaps: stored analytically so they do not cancel in the log domain.
  for (std::size_t n = 0; n + 1 < e.size(); ++n) {
    const LambdaEntry& a = e[n];
    const LambdaEntry& b = e[n + 1];
    if (n == 0) {
      e[n].log_gap = std::numeric_limits<double>::infinity();
    } else if (a.value && b.value) {
      e[n].log_gap = std::log1p(static_cast<double>(*b.value - *a.value) / static_cast<double>(*a.value));
    } else if (b.role == LambdaRole::packed) {
      e[n].log_gap = std::log1p(2.0 * std::exp(-a.log_value));
    } else if (b.role == LambdaRole::doubled) {
      // a = mu + 2(s-1), b = 2 mu.
      const LambdaEntry& mu = e[s.cluster_start[static_cast<std::size_t>(b.cluster) - 1]];
      const double s_minus_one = static_cast<double>(n - s.cluster_start[static_cast<std::size_t>(b.cluster) - 1]);
      e[n].log_gap = std::log(2.0) - std::log1p(2.0 * s_minus_one * std::exp(-mu.log_value));
    } else {
      e[n].log_gap = b.log_value - a.log_value;
    }
  }
  e.back().log_gap = kNaN;

  s.log_v = slow_sequence_log(e.size());
  s.integer_prefix = 0;
  while (s.integer_prefix < e.size() && e[s.integer_prefix].value) ++s.integer_prefix;
  return s;
}

CounterexampleFamily::CounterexampleFamily(LambdaSchedule schedule) : schedule_(std::move(schedule)) {
  const auto& e = schedule_.entries;
  const auto& lv = schedule_.log_v;
  q_.assign(schedule_.integer_prefix, 0.0);
  // q_n = log M_{lambda_n - 1}; block 0 has L = v_0 = 1, so q_1 = 0.
  for (std::size_t n = 2; n < schedule_.integer_prefix; ++n)
    q_[n] = q_[n - 1] + static_cast<double>(*e[n].value - *e[n - 1].value) * lv[n - 1];
}

std::string CounterexampleFamily::spec() const {
  return "counterexample:" + std::to_string(schedule_.pairs) + ":" + std::to_string(schedule_.warmup);
}

std::size_t CounterexampleFamily::block_of(std::size_t k) const {
  const auto& e = schedule_.entries;
  std::size_t lo = 0, hi = schedule_.integer_prefix;  // e[lo].value <= k
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (*e[mid].value <= k)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double CounterexampleFamily::log_weight(std::size_t k) const {
  if (k == 0) return 0.0;
  const std::size_t n = block_of(k);
  if (n == 0) return 0.0;
  const auto lambda_n = *schedule_.entries[n].value;
  return q_[n] + static_cast<double>(k - lambda_n + 1) * schedule_.log_v[n];
}

double CounterexampleFamily::log_ratio(std::size_t k) const { return schedule_.log_v[block_of(k + 1)]; }

double CounterexampleFamily::literal_log_weight(std::size_t k) const {
  return static_cast<double>(k) * log_L(k);
}

CounterexampleSequence build_counterexample(std::size_t pairs, std::size_t warmup) {
  auto family = std::make_shared<const CounterexampleFamily>(build_lambda(pairs, warmup));
  return {family, WeightSequence::from_family(family)};
}

SlowSequenceReport verify_slow_sequence(std::size_t count) {
  SlowSequenceReport out;
  out.count = count;
  const auto lv = slow_sequence_log(2 * count + 1);
  double prev_step = std::numeric_limits<double>::infinity();
  double prev_double = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= count; ++n) {
    const double step = lv[n] - lv[n - 1];
    if (!(step > 0)) out.increasing = false;
    if (!(step < prev_step)) out.ratio_decreasing_to_one = false;
    prev_step = step;
    const double dbl = lv[2 * n] - lv[n];
    if (!(dbl > prev_double)) out.doubling_ratio_increasing = false;
    prev_double = dbl;
  }
  out.last_doubling_log_ratio = prev_double;
  return out;
}

namespace {

void require_horizon(const CounterexampleSequence& S, std::size_t K, std::size_t factor) {
  if (K < 1) throw UsageError("counterexample checks need K >= 1");
  if (K > (std::numeric_limits<std::size_t>::max() >> 2) / factor)
    throw HorizonError("counterexample: K too large");
  (void)S;
}

}  // namespace

LogConvexCheck verify_log_convex(const CounterexampleSequence& S, std::size_t K) {
  require_horizon(S, K, 1);
  LogConvexCheck out;
  out.K = K;
  const auto& fam = *S.family;
  const auto& e = fam.schedule().entries;
  // a_k = log M_k - log M_{k-1} = log L_k.
  double prev = S.sequence.log_ratio(0);
  for (std::size_t k = 2; k <= K; ++k) {
    const double a = S.sequence.log_ratio(k - 1);
    if (a < prev && !out.first_violation) {
      out.nondecreasing = false;
      out.first_violation = k;
    }
    const std::size_t n = fam.block_of(k);
    const bool boundary = e[n].value && *e[n].value == k;
    if (boundary) {
      ++out.boundaries_checked;
    } else if (a != prev) {
      out.constant_within_blocks = false;
    }
    prev = a;
  }
  out.generic_validation = check_log_convex(S.sequence, K).log_convex;
  return out;
}

DiffClosedCheck verify_diff_closed(const CounterexampleSequence& S, std::size_t K) {
  require_horizon(S, K, 1);
  DiffClosedCheck out;
  out.K = K;
  const auto& fam = *S.family;
  for (std::size_t k = 1; k <= K; ++k) {
    const double log_b = S.sequence.log_ratio(k) / static_cast<double>(k);
    const double b = std::exp(log_b);
    if (b > out.sup_b) {
      out.sup_b = b;
      out.argsup = k;
    }
    const double step = 2 * (fam.log_L(k + 1) - fam.log_L(k));
    if (log_b > step) ++out.step_bound_violations;
  }
  const auto& e = fam.schedule().entries;
  const auto& lv = fam.schedule().log_v;
  for (std::size_t n = 1; n < fam.schedule().integer_prefix && *e[n].value <= K + 1; ++n)
    out.max_boundary_jump_sq = std::max(out.max_boundary_jump_sq, std::exp(2 * (lv[n] - lv[n - 1])));
  out.bounded_by_four = out.sup_b <= 4.0 && out.max_boundary_jump_sq <= 4.0;
  return out;
}

QuasianalyticCheck verify_quasianalytic_diag(const CounterexampleSequence& S, std::size_t K) {
  require_horizon(S, K, 2);
  QuasianalyticCheck out;
  out.K = K;
  const auto& fam = *S.family;
  const auto& sched = fam.schedule();
  const auto& e = sched.entries;

  // term(n) = 1 / (n Lbar_{2n}^2) with Lbar_{2n}^2 = M_{2n}^{1/n}.
  auto term = [&](std::size_t n) {
    const double nd = static_cast<double>(n);
    return std::exp(-S.sequence.log_weight(2 * n) / nd) / nd;
  };
  long double acc = 0;
  std::size_t next_sample = 1;
  for (std::size_t n = 1; n <= K; ++n) {
    acc += term(n);
    if (n == next_sample || n == K) {
      out.ns.push_back(n);
      out.direct_partial_sums.push_back(static_cast<double>(acc));
      next_sample *= 2;
    }
  }

  // Blockwise chain for blocks [lambda_b, lambda_{b+1}) with lambda_{b+1} <= 2K.
  for (std::size_t b = 1; b + 1 < sched.integer_prefix; ++b) {
    const std::uint64_t lo = *e[b].value, hi = *e[b + 1].value;
    if (hi > 2 * K) break;
    BlockChainTerm t;
    t.block = b;
    t.lambda_lo = lo;
    t.lambda_hi = hi;
    long double chunk = 0;
    for (std::uint64_t n = lo / 2; n < hi / 2; ++n) chunk += term(n);
    t.chunk_sum = static_cast<double>(chunk);
    t.lower_bound = e[b].log_gap / std::exp(2 * sched.log_v[b]);
    t.holds = t.chunk_sum >= t.lower_bound;
    if (!t.holds) out.chain_holds = false;
    out.chain.push_back(t);
  }

  // Gap series sum_{n>0} (log lambda_{n+1} - log lambda_n) / v_n^2, read off after each cluster.
  long double gap_sum = 0;
  std::size_t cluster = 0;
  out.min_sum_per_pair = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n + 1 < e.size(); ++n) {
    gap_sum += e[n].log_gap / std::exp(2 * sched.log_v[n]);
    if (cluster < sched.doubled.size() && n == sched.doubled[cluster]) {
      ++cluster;
      out.gap_partial_sums.push_back(static_cast<double>(gap_sum));
      out.min_sum_per_pair =
          std::min(out.min_sum_per_pair, static_cast<double>(gap_sum) / static_cast<double>(cluster));
    }
  }
  const bool linear = out.min_sum_per_pair >= 0.9;
  out.trend = linear && out.chain_holds ? "diverging-like" : "inconclusive";
  return out;
}

StrictGapCheck verify_strict_gap(const CounterexampleSequence& S, std::size_t K, double tolerance) {
  require_horizon(S, K, 2);
  StrictGapCheck out;
  out.K = K;
  // Independent path: running sums of a_j = log L_j give log M_k.
  std::vector<long double> running(2 * K + 1, 0.0L);
  for (std::size_t k = 1; k <= 2 * K; ++k) running[k] = running[k - 1] + S.family->log_L(k);
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    // (Lbar_k / Lbar_2k)^2 from the closed-form block formula.
    const double log_lbar_k = S.sequence.log_weight(k) / kd;
    const double log_lbar_2k = S.sequence.log_weight(2 * k) / (2 * kd);
    const double log_g = 2 * (log_lbar_k - log_lbar_2k);
    const double direct = static_cast<double>((2 * running[k] - running[2 * k]) / kd);
    const double err = std::abs(log_g - direct);
    out.max_identity_error = std::max(out.max_identity_error, err);
    if (err > tolerance * std::max(1.0, std::abs(direct))) out.identity_holds = false;
    if (log_g > 0) out.within_unit_interval = false;
    if (log_g == 0) {
      ++out.exact_one_count;
      if (!out.first_exact_one) out.first_exact_one = k;
    }
    const double g = std::exp(log_g);
    if (g < out.min_g) {
      out.min_g = g;
      out.argmin = k;
    }
    if (g <= 0.1 && !out.first_below_tenth) out.first_below_tenth = k;
  }
  return out;
}

LiteralDiagnostic literal_power_diagnostic(const CounterexampleSequence& S, std::size_t K) {
  require_horizon(S, K, 1);
  LiteralDiagnostic out;
  out.K = K;
  double prev = S.family->literal_log_weight(1) - S.family->literal_log_weight(0);
  for (std::size_t k = 2; k <= K; ++k) {
    const double a = S.family->literal_log_weight(k) - S.family->literal_log_weight(k - 1);
    if (a < prev) {
      out.first_violation = k;
      break;
    }
    prev = a;
  }
  return out;
}

std::vector<CounterexampleRow> counterexample_rows(const CounterexampleSequence& S, std::size_t K) {
  require_horizon(S, K, 2);
  std::vector<CounterexampleRow> rows;
  rows.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double a = S.sequence.log_ratio(k - 1);
    const double b = std::exp(S.sequence.log_ratio(k) / kd);
    const double g = std::exp((2 * S.sequence.log_weight(k) - S.sequence.log_weight(2 * k)) / kd);
    rows.push_back({k, a, b, g});
  }
  return rows;
}

}  // namespace dcsharp
