#pragma once

// phi_M(r) = sup_{n >= 0} r^{n+2} / M_n.
//
// log(r^{n+2}/M_n) is concave in n, increasing while m_n < r, so the supremum
// sits at the smallest n with m_n >= r (ties when m_n = r exactly).

#include <cstddef>
#include <optional>

#include "dcsharp/exact.hpp"
#include "dcsharp/log_magnitude.hpp"
#include "dcsharp/weights.hpp"

namespace dcsharp {

inline constexpr std::size_t kDefaultPhiHorizon = 1'000'000;

struct PhiValue {
  LogMagnitude value;
  std::size_t argmax_n = 0;
  bool saturated = false;  // m_n < r up to the horizon; value is the horizon term
};

PhiValue phi(const WeightSequence& M, double r, std::size_t horizon = kDefaultPhiHorizon);
/// Same, with log r given directly (r may be far outside double range).
PhiValue phi_log(const WeightSequence& M, double log_r, std::size_t horizon = kDefaultPhiHorizon);

struct ExactPhiValue {
  Rational value;
  std::size_t argmax_n = 0;
  bool saturated = false;
};

/// Exact rational phi for rational r > 0; requires an exact family.
ExactPhiValue phi_exact(const WeightSequence& M, const Rational& r, std::size_t horizon = kDefaultPhiHorizon);

struct PhiIdentityCertificate {
  std::size_t k = 0;
  bool exact_mode = false;
  double log_lhs = 0;  // log(m_k^{k+2} / phi(m_k))
  double log_rhs = 0;  // log M_k
  double log_difference = 0;
  std::optional<bool> exact_equal;
  std::size_t argmax_n = 0;
  bool saturated = false;

  bool passed(double tolerance = 1e-12) const;
};

/// Checks m_k^{k+2} / phi(m_k) = M_k.  Exact mode is used when the family has
/// exact values and prefer_exact is set.
PhiIdentityCertificate verify_phi_identity(const WeightSequence& M, std::size_t k, bool prefer_exact = true,
                                           std::size_t horizon = kDefaultPhiHorizon);

}  // namespace dcsharp
