#include "dcsharp/log_magnitude.hpp"

#include <cstdio>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log_diff_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (b > a) throw DomainError("log_diff_exp: negative difference");
  if (a == b) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

LogMagnitude LogMagnitude::from_log(double log_abs, int sign) {
  LogMagnitude out;
  if (sign == 0 || log_abs == kNegInf) return out;
  if (std::isnan(log_abs)) throw DomainError("LogMagnitude: NaN log");
  out.sign_ = sign > 0 ? 1 : -1;
  out.log_abs_ = log_abs;
  return out;
}

LogMagnitude LogMagnitude::from_double(double x) {
  if (std::isnan(x)) throw DomainError("LogMagnitude: NaN");
  if (x == 0.0) return {};
  return from_log(std::log(std::fabs(x)), x > 0 ? 1 : -1);
}

LogMagnitude LogMagnitude::from_rational(const Rational& x) {
  if (x == 0) return {};
  return from_log(dcsharp::log_abs(x), sgn(x));
}

double LogMagnitude::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs_);
}

LogMagnitude LogMagnitude::abs() const {
  LogMagnitude out = *this;
  if (out.sign_ != 0) out.sign_ = 1;
  return out;
}

LogMagnitude LogMagnitude::operator-() const {
  LogMagnitude out = *this;
  out.sign_ = -out.sign_;
  return out;
}

LogMagnitude LogMagnitude::pow(double exponent) const {
  if (exponent == 0.0) return one();
  if (sign_ == 0) return {};
  if (sign_ < 0) {
    double integral = 0.0;
    if (std::modf(exponent, &integral) != 0.0)
      throw DomainError("LogMagnitude::pow: fractional power of a negative value");
    bool odd = std::fmod(std::fabs(integral), 2.0) == 1.0;
    return from_log(log_abs_ * exponent, odd ? -1 : 1);
  }
  return from_log(log_abs_ * exponent, 1);
}

LogMagnitude LogMagnitude::root(double k) const {
  if (sign_ < 0) throw DomainError("LogMagnitude::root: negative value");
  if (k <= 0) throw DomainError("LogMagnitude::root: nonpositive order");
  if (sign_ == 0) return {};
  return from_log(log_abs_ / k, 1);
}

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  return LogMagnitude::from_log(a.log_abs_ + b.log_abs_, a.sign_ * b.sign_);
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
  if (b.sign_ == 0) throw DomainError("LogMagnitude: division by zero");
  if (a.sign_ == 0) return {};
  return LogMagnitude::from_log(a.log_abs_ - b.log_abs_, a.sign_ * b.sign_);
}

LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  if (a.sign_ == b.sign_) return LogMagnitude::from_log(log_sum_exp(a.log_abs_, b.log_abs_), a.sign_);
  // Opposite signs: the larger magnitude wins.
  if (a.log_abs_ == b.log_abs_) return {};
  if (a.log_abs_ > b.log_abs_)
    return LogMagnitude::from_log(log_diff_exp(a.log_abs_, b.log_abs_), a.sign_);
  return LogMagnitude::from_log(log_diff_exp(b.log_abs_, a.log_abs_), b.sign_);
}

LogMagnitude operator-(const LogMagnitude& a, const LogMagnitude& b) { return a + (-b); }

std::partial_ordering operator<=>(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::partial_ordering::equivalent;
  if (a.sign_ > 0) return a.log_abs_ <=> b.log_abs_;
  return b.log_abs_ <=> a.log_abs_;
}

std::string LogMagnitude::to_string() const {
  if (sign_ == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%sexp(%.17g)", sign_ < 0 ? "-" : "", log_abs_);
  return buf;
}

}  // namespace dcsharp
