#pragma once

// Bivariate truncated Taylor expansions ("jets") at a base point.
//
// A Jet2 of degree D stores the coefficients c_{ij}, i + j <= D, of
//   f(a + t) = sum c_{ij} t1^i t2^j + O(|t|^{D+1}),
// so that the partial derivative of order alpha at the base point is
// alpha! * c_alpha.  Arithmetic is truncated by total degree.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dcsharp/errors.hpp"
#include "dcsharp/exact.hpp"

namespace dcsharp {

struct Multiindex {
  int first = 0;
  int second = 0;

  int order() const { return first + second; }
  friend bool operator==(const Multiindex&, const Multiindex&) = default;
};

/// Every multiindex with order <= max_order, graded by order.
std::vector<Multiindex> multiindices_up_to(int max_order);

template <class Scalar>
class Jet2 {
 public:
  using Point = std::array<Scalar, 2>;

  Jet2(Point base, int degree) : base_(std::move(base)), degree_(degree) {
    if (degree < 0) throw UsageError("Jet2: negative degree");
    coeffs_.assign(size_for(degree), Scalar(0));
  }

  static Jet2 constant(Point base, int degree, const Scalar& value) {
    Jet2 out(std::move(base), degree);
    out.coeffs_[0] = value;
    return out;
  }

  /// The coordinate function x_axis (axis 0 or 1) expanded at the base point.
  static Jet2 variable(Point base, int degree, int axis) {
    Scalar value = base[axis];
    Jet2 out(std::move(base), degree);
    out.coeffs_[0] = value;
    if (degree >= 1) out.coeffs_[axis == 0 ? index(1, 0) : index(0, 1)] = Scalar(1);
    return out;
  }

  int degree() const { return degree_; }
  const Point& base() const { return base_; }
  const Scalar& value() const { return coeffs_[0]; }

  const Scalar& coeff(int i, int j) const { return coeffs_[checked_index(i, j)]; }
  Scalar& coeff(int i, int j) { return coeffs_[checked_index(i, j)]; }
  const Scalar& coeff(Multiindex a) const { return coeff(a.first, a.second); }

  /// partial^alpha f(base) = alpha! * coeff(alpha).
  Scalar derivative(Multiindex alpha) const {
    if (alpha.first < 0 || alpha.second < 0) throw UsageError("Jet2: negative multiindex");
    if (alpha.order() > degree_)
      throw DegreeError("Jet2::derivative: |alpha| = " + std::to_string(alpha.order()) +
                        " exceeds degree " + std::to_string(degree_));
    Scalar out = coeffs_[index(alpha.first, alpha.second)];
    for (int k = 2; k <= alpha.first; ++k) out *= Scalar(k);
    for (int k = 2; k <= alpha.second; ++k) out *= Scalar(k);
    return out;
  }

  Jet2& operator+=(const Jet2& o) {
    require_compatible(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    require_compatible(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= o.coeffs_[n];
    return *this;
  }
  Jet2& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet2& operator+=(const Scalar& s) {
    coeffs_[0] += s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Scalar& s) { return a *= s; }
  friend Jet2 operator*(const Scalar& s, Jet2 a) { return a *= s; }
  friend Jet2 operator+(Jet2 a, const Scalar& s) { return a += s; }
  Jet2 operator-() const {
    Jet2 out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  /// Cauchy product truncated to total degree D.
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    a.require_compatible(b);
    Jet2 out(a.base_, a.degree_);
    const int d = a.degree_;
    for (int i1 = 0; i1 <= d; ++i1) {
      for (int j1 = 0; i1 + j1 <= d; ++j1) {
        const Scalar& ca = a.coeffs_[index(i1, j1)];
        if (ca == 0) continue;
        for (int i2 = 0; i1 + j1 + i2 <= d; ++i2) {
          for (int j2 = 0; i1 + j1 + i2 + j2 <= d; ++j2) {
            const Scalar& cb = b.coeffs_[index(i2, j2)];
            if (cb == 0) continue;
            out.coeffs_[index(i1 + i2, j1 + j2)] += ca * cb;
          }
        }
      }
    }
    return out;
  }

  /// Multiplicative inverse up to degree D.
  friend Jet2 recip(const Jet2& a) {
    const Scalar& a0 = a.coeffs_[0];
    if (a0 == 0) throw SingularJetError("Jet2 recip: zero constant term");
    Jet2 out(a.base_, a.degree_);
    const Scalar inv0 = Scalar(1) / a0;
    out.coeffs_[0] = inv0;
    // r_g = -(1/a0) * sum_{0 < b <= g} a_b r_{g-b}, graded by total degree.
    for (int total = 1; total <= a.degree_; ++total) {
      for (int i = total; i >= 0; --i) {
        const int j = total - i;
        Scalar acc(0);
        for (int bi = 0; bi <= i; ++bi) {
          for (int bj = 0; bj <= j; ++bj) {
            if (bi == 0 && bj == 0) continue;
            const Scalar& ab = a.coeffs_[index(bi, bj)];
            if (ab == 0) continue;
            acc += ab * out.coeffs_[index(i - bi, j - bj)];
          }
        }
        out.coeffs_[index(i, j)] = -acc * inv0;
      }
    }
    return out;
  }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.degree_ == b.degree_ && a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
  }

  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  static std::size_t size_for(int degree) {
    return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
  }
  /// Graded layout: all coefficients of total degree d start at d(d+1)/2.
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

 private:
  std::size_t checked_index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree_)
      throw DegreeError("Jet2: coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                        ") outside degree " + std::to_string(degree_));
    return index(i, j);
  }

  void require_compatible(const Jet2& o) const {
    if (degree_ != o.degree_) throw UsageError("Jet2: degree mismatch");
    if (!(base_ == o.base_)) throw UsageError("Jet2: base point mismatch");
  }

  Point base_;
  int degree_;
  std::vector<Scalar> coeffs_;
};

using ExactJet = Jet2<Rational>;
using FloatJet = Jet2<double>;

/// Integer power by repeated multiplication (n >= 0).
template <class Scalar>
Jet2<Scalar> pow(const Jet2<Scalar>& a, unsigned n) {
  Jet2<Scalar> out = Jet2<Scalar>::constant(a.base(), a.degree(), Scalar(1));
  Jet2<Scalar> base = a;
  while (n > 0) {
    if (n & 1u) out = out * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return out;
}

/// Jets of sin(t) and cos(t).  Angle addition on the constant term plus the
/// Maclaurin series of the zero-constant remainder, truncated to D.
std::pair<FloatJet, FloatJet> sin_cos(const FloatJet& t);

/// Exact variant; only defined when the constant term of t is zero, so that
/// every coefficient stays rational.
std::pair<ExactJet, ExactJet> sin_cos(const ExactJet& t);

/// Converts an exact jet to floating point (coefficientwise rounding).
FloatJet to_float(const ExactJet& jet);

}  // namespace dcsharp
