#pragma once

// Independent derivative oracle: Richardson-extrapolated central differences
// evaluated in 50-digit binary floating point.

#include <array>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dcsharp/jet2.hpp"

namespace dcsharp {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;
using PointwiseEvaluator = std::function<HighPrecision(const HighPrecision&, const HighPrecision&)>;

inline constexpr double kDefaultFiniteDifferenceStep = 1e-3;
inline constexpr int kMaxFiniteDifferenceOrder = 4;

/// Estimate of partial^alpha f(x) from central differences with steps h and
/// h/2 combined by one Richardson step (error O(h^4)).  |alpha| <= 4.
double finite_difference_check(const PointwiseEvaluator& f, std::array<double, 2> x,
                               Multiindex alpha, double h = kDefaultFiniteDifferenceStep);

}  // namespace dcsharp
