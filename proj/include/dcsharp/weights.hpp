#pragma once

// Weight sequences M = (M_k) with M_0 = 1 and M_{k+1}/M_k nondecreasing.
//
// Values are served in the log domain (log M_k, log m_k with
// m_k = M_{k+1}/M_k).  Families whose terms are rational additionally serve
// exact values, which the certificates use.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcsharp/exact.hpp"
#include "dcsharp/log_magnitude.hpp"

namespace dcsharp {

/// A concrete family of weights.  Implementations must be immutable.
class WeightFamily {
 public:
  virtual ~WeightFamily() = default;

  /// Canonical string spec ("gevrey:1", "shift:2:analytic", ...).
  virtual std::string spec() const = 0;
  virtual double log_weight(std::size_t k) const = 0;
  /// log(M_{k+1} / M_k).
  virtual double log_ratio(std::size_t k) const = 0;

  virtual bool has_exact() const { return false; }
  virtual Rational exact_weight(std::size_t k) const;
  virtual Rational exact_ratio(std::size_t k) const { return exact_weight(k + 1) / exact_weight(k); }

  /// Largest admissible index, when the family is a finite table.
  virtual std::optional<std::size_t> max_index() const { return std::nullopt; }
};

class WeightSequence {
 public:
  static WeightSequence analytic();
  /// M_k = (k!)^s, s >= 0.  Exact when s is a small nonnegative integer.
  static WeightSequence gevrey(double s);
  /// M_0 = 1, M_k = (log(k + c))^k for k >= 1; requires c >= e.  Log-convexity
  /// is verified on construction up to validate_horizon.
  static WeightSequence log_power(double c, std::size_t validate_horizon = 10'000);
  /// Table of log M_k, validated on load (M_0 = 1, log-convex).
  static WeightSequence custom(std::vector<double> log_values);
  static WeightSequence from_family(std::shared_ptr<const WeightFamily> family);

  /// M^{(p)}: k -> M_{pk}.
  WeightSequence shift(unsigned p) const;
  /// M^p: k -> M_k^p.
  WeightSequence power(unsigned p) const;

  LogMagnitude weight(std::size_t k) const;
  double log_weight(std::size_t k) const;
  LogMagnitude ratio(std::size_t k) const;
  double log_ratio(std::size_t k) const;

  bool has_exact() const;
  Rational exact_weight(std::size_t k) const;
  Rational exact_ratio(std::size_t k) const;

  std::optional<std::size_t> max_index() const;
  std::string spec() const;
  const WeightFamily& family() const;

 private:
  struct State;
  explicit WeightSequence(std::shared_ptr<State> state);
  void check_index(std::size_t k) const;

  std::shared_ptr<State> state_;
};

struct LogConvexityReport {
  std::size_t horizon = 0;
  bool normalized = false;  // M_0 = 1
  bool log_convex = false;
  std::optional<std::size_t> first_violation;  // smallest k with m_{k+1} < m_k
};

/// Checks M_0 = 1 and m_k <= m_{k+1} for k + 1 <= K (exact comparison of the
/// log ratios; exact rationals when the family has them and exact = true).
LogConvexityReport check_log_convex(const WeightSequence& M, std::size_t K, bool exact = false);
/// Throws ValidationError naming the first violation.
void validate_log_convex(const WeightSequence& M, std::size_t K);

}  // namespace dcsharp
