#include "dcsharp/weights.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

#include "dcsharp/errors.hpp"

namespace dcsharp {

Rational WeightFamily::exact_weight(std::size_t) const {
  throw UsageError("weight family '" + spec() + "' has no exact-rational values");
}

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

class AnalyticFamily final : public WeightFamily {
 public:
  std::string spec() const override { return "analytic"; }
  double log_weight(std::size_t) const override { return 0.0; }
  double log_ratio(std::size_t) const override { return 0.0; }
  bool has_exact() const override { return true; }
  Rational exact_weight(std::size_t) const override { return 1; }
  Rational exact_ratio(std::size_t) const override { return 1; }
};

class GevreyFamily final : public WeightFamily {
 public:
  explicit GevreyFamily(double s) : s_(s) {
    if (!(s >= 0) || !std::isfinite(s)) throw DomainError("gevrey: order s must be >= 0");
    double integral = 0;
    exact_ = std::modf(s, &integral) == 0.0 && s <= 16;
  }
  std::string spec() const override { return "gevrey:" + format_number(s_); }
  double log_weight(std::size_t k) const override {
    return s_ == 0 ? 0.0 : s_ * std::lgamma(static_cast<double>(k) + 1.0);
  }
  double log_ratio(std::size_t k) const override {
    return s_ == 0 ? 0.0 : s_ * std::log(static_cast<double>(k) + 1.0);
  }
  bool has_exact() const override { return exact_; }
  Rational exact_weight(std::size_t k) const override {
    require_exact();
    return pow(factorial(k), static_cast<unsigned long>(s_));
  }
  Rational exact_ratio(std::size_t k) const override {
    require_exact();
    return pow(Rational(static_cast<unsigned long>(k) + 1), static_cast<unsigned long>(s_));
  }

 private:
  void require_exact() const {
    if (!exact_) throw UsageError("gevrey:" + format_number(s_) + " has no exact values");
  }
  double s_;
  bool exact_ = false;
};

class LogPowerFamily final : public WeightFamily {
 public:
  explicit LogPowerFamily(double c) : c_(c) {
    if (!(c >= std::numbers::e) || !std::isfinite(c))
      throw DomainError("log_power: offset c must satisfy c >= e (got " + format_number(c) + ")");
  }
  std::string spec() const override { return "logpow:" + format_number(c_); }
  double log_weight(std::size_t k) const override {
    if (k == 0) return 0.0;
    return static_cast<double>(k) * loglog(k);
  }
  double log_ratio(std::size_t k) const override {
    if (k == 0) return loglog(1);
    // (k+1) ll(k+1) - k ll(k) = ll(k+1) + k (ll(k+1) - ll(k)).
    const double kd = static_cast<double>(k);
    const double inner = std::log(kd + c_);
    const double step = std::log1p(std::log1p(1.0 / (kd + c_)) / inner);
    return loglog(k + 1) + kd * step;
  }

 private:
  double loglog(std::size_t k) const { return std::log(std::log(static_cast<double>(k) + c_)); }
  double c_;
};

class CustomFamily final : public WeightFamily {
 public:
  explicit CustomFamily(std::vector<double> log_values) : values_(std::move(log_values)) {
    if (values_.size() < 2) throw ValidationError("custom sequence: need at least M_0 and M_1");
    for (double v : values_)
      if (!std::isfinite(v)) throw ValidationError("custom sequence: non-finite log value");
  }
  std::string spec() const override { return "custom:" + std::to_string(values_.size()); }
  double log_weight(std::size_t k) const override { return values_.at(k); }
  double log_ratio(std::size_t k) const override { return values_.at(k + 1) - values_.at(k); }
  std::optional<std::size_t> max_index() const override { return values_.size() - 1; }

 private:
  std::vector<double> values_;
};

class ShiftFamily final : public WeightFamily {
 public:
  ShiftFamily(WeightSequence inner, unsigned p) : inner_(std::move(inner)), p_(p) {
    if (p == 0) throw DomainError("shift: p must be >= 1");
  }
  std::string spec() const override { return "shift:" + std::to_string(p_) + ":" + inner_.spec(); }
  double log_weight(std::size_t k) const override { return inner_.log_weight(p_ * k); }
  double log_ratio(std::size_t k) const override {
    double acc = 0.0;
    for (std::size_t i = p_ * k; i < p_ * k + p_; ++i) acc += inner_.log_ratio(i);
    return acc;
  }
  bool has_exact() const override { return inner_.has_exact(); }
  Rational exact_weight(std::size_t k) const override { return inner_.exact_weight(p_ * k); }
  Rational exact_ratio(std::size_t k) const override {
    Rational acc = 1;
    for (std::size_t i = p_ * k; i < p_ * k + p_; ++i) acc *= inner_.exact_ratio(i);
    return acc;
  }
  std::optional<std::size_t> max_index() const override {
    auto m = inner_.max_index();
    if (!m) return std::nullopt;
    return *m / p_;
  }

 private:
  WeightSequence inner_;
  unsigned p_;
};

class PowerFamily final : public WeightFamily {
 public:
  PowerFamily(WeightSequence inner, unsigned p) : inner_(std::move(inner)), p_(p) {
    if (p == 0) throw DomainError("power: p must be >= 1");
  }
  std::string spec() const override { return "power:" + std::to_string(p_) + ":" + inner_.spec(); }
  double log_weight(std::size_t k) const override { return p_ * inner_.log_weight(k); }
  double log_ratio(std::size_t k) const override { return p_ * inner_.log_ratio(k); }
  bool has_exact() const override { return inner_.has_exact(); }
  Rational exact_weight(std::size_t k) const override { return pow(inner_.exact_weight(k), p_); }
  Rational exact_ratio(std::size_t k) const override { return pow(inner_.exact_ratio(k), p_); }
  std::optional<std::size_t> max_index() const override { return inner_.max_index(); }

 private:
  WeightSequence inner_;
  unsigned p_;
};

constexpr std::size_t kCacheLimit = std::size_t{1} << 20;

}  // namespace

// Memoized log M_k, grown on demand under a writer lock.
struct WeightSequence::State {
  std::shared_ptr<const WeightFamily> family;
  mutable std::shared_mutex mutex;
  mutable std::vector<double> log_cache;
};

WeightSequence::WeightSequence(std::shared_ptr<State> state) : state_(std::move(state)) {}

WeightSequence WeightSequence::from_family(std::shared_ptr<const WeightFamily> family) {
  if (!family) throw UsageError("WeightSequence: null family");
  auto state = std::make_shared<State>();
  state->family = std::move(family);
  WeightSequence out(std::move(state));
  if (out.state_->family->log_weight(0) != 0.0)
    throw ValidationError("weight sequence '" + out.spec() + "': M_0 must equal 1");
  return out;
}

WeightSequence WeightSequence::analytic() { return from_family(std::make_shared<AnalyticFamily>()); }

WeightSequence WeightSequence::gevrey(double s) { return from_family(std::make_shared<GevreyFamily>(s)); }

WeightSequence WeightSequence::log_power(double c, std::size_t validate_horizon) {
  auto out = from_family(std::make_shared<LogPowerFamily>(c));
  validate_log_convex(out, validate_horizon);
  return out;
}

WeightSequence WeightSequence::custom(std::vector<double> log_values) {
  auto out = from_family(std::make_shared<CustomFamily>(std::move(log_values)));
  validate_log_convex(out, *out.max_index());
  return out;
}

WeightSequence WeightSequence::shift(unsigned p) const {
  return from_family(std::make_shared<ShiftFamily>(*this, p));
}

WeightSequence WeightSequence::power(unsigned p) const {
  return from_family(std::make_shared<PowerFamily>(*this, p));
}

void WeightSequence::check_index(std::size_t k) const {
  auto m = state_->family->max_index();
  if (m && k > *m)
    throw HorizonError("weight sequence '" + spec() + "': index " + std::to_string(k) +
                       " beyond table end " + std::to_string(*m));
}

double WeightSequence::log_weight(std::size_t k) const {
  check_index(k);
  if (k >= kCacheLimit) return state_->family->log_weight(k);
  {
    std::shared_lock lock(state_->mutex);
    if (k < state_->log_cache.size()) return state_->log_cache[k];
  }
  std::unique_lock lock(state_->mutex);
  auto& cache = state_->log_cache;
  if (k >= cache.size()) {
    std::size_t target = std::min(kCacheLimit, std::max(k + 1, 2 * cache.size()));
    if (auto m = state_->family->max_index()) target = std::min(target, *m + 1);
    cache.reserve(target);
    for (std::size_t i = cache.size(); i < target; ++i) cache.push_back(state_->family->log_weight(i));
  }
  return cache[k];
}

LogMagnitude WeightSequence::weight(std::size_t k) const { return LogMagnitude::from_log(log_weight(k)); }

double WeightSequence::log_ratio(std::size_t k) const {
  check_index(k + 1);
  return state_->family->log_ratio(k);
}

LogMagnitude WeightSequence::ratio(std::size_t k) const { return LogMagnitude::from_log(log_ratio(k)); }

bool WeightSequence::has_exact() const { return state_->family->has_exact(); }

Rational WeightSequence::exact_weight(std::size_t k) const {
  check_index(k);
  return state_->family->exact_weight(k);
}

Rational WeightSequence::exact_ratio(std::size_t k) const {
  check_index(k + 1);
  return state_->family->exact_ratio(k);
}

std::optional<std::size_t> WeightSequence::max_index() const { return state_->family->max_index(); }

std::string WeightSequence::spec() const { return state_->family->spec(); }

const WeightFamily& WeightSequence::family() const { return *state_->family; }

LogConvexityReport check_log_convex(const WeightSequence& M, std::size_t K, bool exact) {
  LogConvexityReport report;
  if (auto m = M.max_index()) K = std::min(K, *m);
  report.horizon = K;
  const bool use_exact = exact && M.has_exact();
  report.normalized = use_exact ? M.exact_weight(0) == 1 : M.log_weight(0) == 0.0;
  report.log_convex = true;
  if (K < 2) return report;
  if (use_exact) {
    Rational prev = M.exact_ratio(0);
    for (std::size_t k = 1; k + 1 <= K; ++k) {
      Rational cur = M.exact_ratio(k);
      if (cur < prev) {
        report.log_convex = false;
        report.first_violation = k - 1;
        break;
      }
      prev = std::move(cur);
    }
    return report;
  }
  double prev = M.log_ratio(0);
  for (std::size_t k = 1; k + 1 <= K; ++k) {
    const double cur = M.log_ratio(k);
    if (cur < prev) {
      report.log_convex = false;
      report.first_violation = k - 1;
      break;
    }
    prev = cur;
  }
  return report;
}

void validate_log_convex(const WeightSequence& M, std::size_t K) {
  auto report = check_log_convex(M, K);
  if (!report.normalized) throw ValidationError("weight sequence '" + M.spec() + "': M_0 != 1");
  if (!report.log_convex)
    throw ValidationError("weight sequence '" + M.spec() + "' is not log-convex: m_" +
                          std::to_string(*report.first_violation + 1) + " < m_" +
                          std::to_string(*report.first_violation));
}

}  // namespace dcsharp
