#pragma once

// Counting function, density estimates and the summation-by-parts identity
// for index sets Lambda of positive integers.

#include <cstddef>
#include <string>
#include <vector>

#include "dcsharp/exact.hpp"

namespace dcsharp {

struct DensitySample {
  std::size_t n = 0;
  std::size_t count = 0;  // A(n) = #{k in Lambda : k <= n}
  double density = 0;     // A(n) / n
  double harmonic = 0;    // sum_{k in Lambda, k <= n} 1/k
  // Exact check of sum 1/k = int_1^n A(x)/x^2 dx + A(n)/n, present when n is
  // at most the exact limit.
  bool abel_checked = false;
  bool abel_equal = false;
  std::string abel_lhs;
  std::string abel_rhs;
};

struct DensityReport {
  std::vector<DensitySample> samples;
  bool counting_monotone = true;
  bool counting_bounded = true;  // A(n) <= n
};

/// lambda must be strictly increasing positive integers; ns sorted or not.
DensityReport density_estimate(const std::vector<std::size_t>& lambda, const std::vector<std::size_t>& ns,
                               std::size_t exact_limit = 5000);

/// Left side of the identity as an exact rational.
Rational harmonic_sum(const std::vector<std::size_t>& lambda, std::size_t n);
/// Right side by exact integration of the step function A(x)/x^2.
Rational abel_right_side(const std::vector<std::size_t>& lambda, std::size_t n);

}  // namespace dcsharp
