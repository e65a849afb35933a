#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "dcsharp/exact.hpp"

namespace dcsharp {

/// A signed real stored as sign and natural log of the magnitude.
///
/// Quantities such as M_k = L_k^k or k! overflow doubles long before the
/// certificates stop caring about them; everything that is only ever
/// multiplied, divided, raised to powers or compared lives here.  Addition
/// uses the stable log-sum-exp form.
class LogMagnitude {
 public:
  /// Zero.
  LogMagnitude() = default;

  static LogMagnitude zero() { return {}; }
  static LogMagnitude one() { return from_log(0.0); }
  static LogMagnitude from_log(double log_abs, int sign = 1);
  static LogMagnitude from_double(double x);
  static LogMagnitude from_rational(const Rational& x);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  /// Undefined (returns -inf) for zero.
  double log_abs() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_abs_;
  }
  /// Decodes to a double; overflows to +-inf and underflows to 0.
  double to_double() const;

  LogMagnitude abs() const;
  LogMagnitude operator-() const;
  LogMagnitude pow(double exponent) const;
  /// k-th root of a positive value.
  LogMagnitude root(double k) const;

  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator-(const LogMagnitude& a, const LogMagnitude& b);

  LogMagnitude& operator*=(const LogMagnitude& o) { return *this = *this * o; }
  LogMagnitude& operator/=(const LogMagnitude& o) { return *this = *this / o; }
  LogMagnitude& operator+=(const LogMagnitude& o) { return *this = *this + o; }

  /// Orders by real value.
  friend std::partial_ordering operator<=>(const LogMagnitude& a, const LogMagnitude& b);
  friend bool operator==(const LogMagnitude& a, const LogMagnitude& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

  std::string to_string() const;

 private:
  int sign_ = 0;
  double log_abs_ = 0.0;
};

/// log(exp(a) + exp(b)) without overflow.
double log_sum_exp(double a, double b);
/// log(exp(a) - exp(b)) for a >= b; -inf when equal.
double log_diff_exp(double a, double b);

}  // namespace dcsharp
