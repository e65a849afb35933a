#include "dcsharp/ostrowski.hpp"

#include <cmath>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

// Smallest n <= horizon with reached(n), assuming reached is monotone.
// Galloping keeps the probes near the answer, which matters for exact ratios.
template <class Pred>
std::optional<std::size_t> first_reached(Pred reached, std::size_t horizon) {
  if (reached(0)) return 0;
  std::size_t lo = 0;  // !reached(lo)
  std::size_t hi = 1;
  while (true) {
    if (hi >= horizon) {
      hi = horizon;
      if (!reached(hi)) return std::nullopt;
      break;
    }
    if (reached(hi)) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (reached(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::size_t effective_horizon(const WeightSequence& M, std::size_t horizon) {
  if (auto m = M.max_index()) {
    if (*m == 0) throw HorizonError("phi: table too short");
    horizon = std::min(horizon, *m - 1);
  }
  return horizon;
}

}  // namespace

PhiValue phi_log(const WeightSequence& M, double log_r, std::size_t horizon) {
  if (!std::isfinite(log_r)) throw UsageError("phi: r must be positive and finite");
  horizon = effective_horizon(M, horizon);
  PhiValue out;
  auto n = first_reached([&](std::size_t k) { return M.log_ratio(k) >= log_r; }, horizon);
  if (n) {
    out.argmax_n = *n;
  } else {
    out.argmax_n = horizon;
    out.saturated = true;
  }
  const double nd = static_cast<double>(out.argmax_n);
  out.value = LogMagnitude::from_log((nd + 2) * log_r - M.log_weight(out.argmax_n));
  return out;
}

PhiValue phi(const WeightSequence& M, double r, std::size_t horizon) {
  if (!(r > 0) || !std::isfinite(r)) throw UsageError("phi: r must be positive and finite");
  return phi_log(M, std::log(r), horizon);
}

ExactPhiValue phi_exact(const WeightSequence& M, const Rational& r, std::size_t horizon) {
  if (r <= 0) throw UsageError("phi_exact: r must be positive");
  if (!M.has_exact()) throw UsageError("phi_exact: '" + M.spec() + "' has no exact values");
  horizon = effective_horizon(M, horizon);
  ExactPhiValue out;
  auto n = first_reached([&](std::size_t k) { return M.exact_ratio(k) >= r; }, horizon);
  if (n) {
    out.argmax_n = *n;
  } else {
    out.argmax_n = horizon;
    out.saturated = true;
  }
  out.value = pow(r, out.argmax_n + 2) / M.exact_weight(out.argmax_n);
  out.value.canonicalize();
  return out;
}

bool PhiIdentityCertificate::passed(double tolerance) const {
  if (saturated) return false;
  if (exact_equal) return *exact_equal;
  return std::abs(log_difference) <= tolerance * std::max(1.0, std::abs(log_rhs));
}

PhiIdentityCertificate verify_phi_identity(const WeightSequence& M, std::size_t k, bool prefer_exact,
                                           std::size_t horizon) {
  PhiIdentityCertificate out;
  out.k = k;
  const double kd = static_cast<double>(k);
  if (prefer_exact && M.has_exact()) {
    out.exact_mode = true;
    const Rational r = M.exact_ratio(k);
    const ExactPhiValue p = phi_exact(M, r, horizon);
    out.argmax_n = p.argmax_n;
    out.saturated = p.saturated;
    Rational lhs = pow(r, k + 2) / p.value;
    lhs.canonicalize();
    const Rational rhs = M.exact_weight(k);
    out.exact_equal = lhs == rhs;
    out.log_lhs = log_abs(lhs);
    out.log_rhs = log_abs(rhs);
    out.log_difference = *out.exact_equal ? 0.0 : out.log_lhs - out.log_rhs;
    return out;
  }
  const double log_r = M.log_ratio(k);
  const PhiValue p = phi_log(M, log_r, horizon);
  out.argmax_n = p.argmax_n;
  out.saturated = p.saturated;
  out.log_lhs = (kd + 2) * log_r - p.value.log_abs();
  out.log_rhs = M.log_weight(k);
  out.log_difference = out.log_lhs - out.log_rhs;
  return out;
}

}  // namespace dcsharp
