#include "dcsharp/finite_difference.hpp"

#include <vector>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

struct StencilPoint {
  HighPrecision offset;  // in units of h
  HighPrecision weight;
};

// n-th central difference: sum_j (-1)^j C(n,j) f(x + (n/2 - j) h) / h^n.
std::vector<StencilPoint> central_stencil(int n) {
  std::vector<StencilPoint> out;
  long long binom = 1;
  for (int j = 0; j <= n; ++j) {
    HighPrecision offset = HighPrecision(n) / 2 - j;
    HighPrecision weight = (j % 2 == 0 ? 1 : -1) * HighPrecision(binom);
    out.push_back({offset, weight});
    binom = binom * (n - j) / (j + 1);
  }
  return out;
}

HighPrecision central_difference(const PointwiseEvaluator& f, const HighPrecision& x1,
                                 const HighPrecision& x2, Multiindex alpha,
                                 const HighPrecision& h) {
  const auto s1 = central_stencil(alpha.first);
  const auto s2 = central_stencil(alpha.second);
  HighPrecision acc = 0;
  for (const auto& p1 : s1)
    for (const auto& p2 : s2) acc += p1.weight * p2.weight * f(x1 + p1.offset * h, x2 + p2.offset * h);
  return acc / pow(h, alpha.order());
}

}  // namespace

double finite_difference_check(const PointwiseEvaluator& f, std::array<double, 2> x,
                               Multiindex alpha, double h) {
  if (alpha.first < 0 || alpha.second < 0) throw UsageError("finite_difference_check: negative index");
  if (alpha.order() > kMaxFiniteDifferenceOrder)
    throw UsageError("finite_difference_check: only orders <= 4 are supported");
  if (!(h > 0)) throw UsageError("finite_difference_check: step must be positive");
  const HighPrecision x1 = x[0];
  const HighPrecision x2 = x[1];
  if (alpha.order() == 0) return static_cast<double>(f(x1, x2));
  const HighPrecision step = h;
  HighPrecision coarse = central_difference(f, x1, x2, alpha, step);
  HighPrecision fine = central_difference(f, x1, x2, alpha, step / 2);
  return static_cast<double>((4 * fine - coarse) / 3);
}

}  // namespace dcsharp
