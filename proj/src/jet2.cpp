#include "dcsharp/jet2.hpp"

#include <cmath>

namespace dcsharp {

std::vector<Multiindex> multiindices_up_to(int max_order) {
  std::vector<Multiindex> out;
  for (int total = 0; total <= max_order; ++total)
    for (int j = 0; j <= total; ++j) out.push_back({total - j, j});
  return out;
}

namespace {

// sin(s) and cos(s) for a jet s with zero constant term.
template <class Scalar>
std::pair<Jet2<Scalar>, Jet2<Scalar>> maclaurin_sin_cos(const Jet2<Scalar>& s) {
  const int d = s.degree();
  Jet2<Scalar> sin_s(s.base(), d);
  Jet2<Scalar> cos_s = Jet2<Scalar>::constant(s.base(), d, Scalar(1));
  // power = s^n / n!; s^n vanishes below degree n so n <= D suffices.
  Jet2<Scalar> power = Jet2<Scalar>::constant(s.base(), d, Scalar(1));
  for (int n = 1; n <= d; ++n) {
    power = power * s;
    power *= Scalar(1) / Scalar(n);
    switch (n % 4) {
      case 1: sin_s += power; break;
      case 2: cos_s -= power; break;
      case 3: sin_s -= power; break;
      default: cos_s += power; break;
    }
  }
  return {sin_s, cos_s};
}

}  // namespace

std::pair<FloatJet, FloatJet> sin_cos(const FloatJet& t) {
  const double t0 = t.value();
  FloatJet s = t;
  s.coeff(0, 0) = 0.0;
  auto [sin_s, cos_s] = maclaurin_sin_cos(s);
  const double s0 = std::sin(t0);
  const double c0 = std::cos(t0);
  FloatJet sin_t = sin_s * c0 + cos_s * s0;
  FloatJet cos_t = cos_s * c0 - sin_s * s0;
  return {sin_t, cos_t};
}

std::pair<ExactJet, ExactJet> sin_cos(const ExactJet& t) {
  if (t.value() != 0)
    throw UsageError("sin_cos: exact jets need a zero constant term (sin/cos of a nonzero "
                     "rational is irrational)");
  return maclaurin_sin_cos(t);
}

FloatJet to_float(const ExactJet& jet) {
  FloatJet out({jet.base()[0].get_d(), jet.base()[1].get_d()}, jet.degree());
  for (int total = 0; total <= jet.degree(); ++total)
    for (int j = 0; j <= total; ++j) out.coeff(total - j, j) = jet.coeff(total - j, j).get_d();
  return out;
}

}  // namespace dcsharp
