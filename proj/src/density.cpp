#include "dcsharp/density.hpp"

#include <algorithm>

#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

void require_index_set(const std::vector<std::size_t>& lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) throw UsageError("index set must contain positive integers only");
    if (i > 0 && lambda[i] <= lambda[i - 1]) throw UsageError("index set must be strictly increasing");
  }
}

std::size_t count_upto(const std::vector<std::size_t>& lambda, std::size_t n) {
  return static_cast<std::size_t>(std::upper_bound(lambda.begin(), lambda.end(), n) - lambda.begin());
}

}  // namespace

Rational harmonic_sum(const std::vector<std::size_t>& lambda, std::size_t n) {
  require_index_set(lambda);
  Rational acc = 0;
  for (std::size_t k : lambda) {
    if (k > n) break;
    acc += Rational(1, static_cast<unsigned long>(k));
  }
  acc.canonicalize();
  return acc;
}

Rational abel_right_side(const std::vector<std::size_t>& lambda, std::size_t n) {
  require_index_set(lambda);
  if (n == 0) return 0;
  // A is constant on [j, j+1), so the integral over that piece is A(j)(1/j - 1/(j+1)).
  Rational acc = 0;
  std::size_t count = 0;
  auto it = lambda.begin();
  for (std::size_t j = 1; j <= n; ++j) {
    while (it != lambda.end() && *it <= j) {
      ++count;
      ++it;
    }
    if (j < n && count > 0) {
      const auto jl = static_cast<unsigned long>(j);
      acc += Rational(static_cast<unsigned long>(count), jl * (jl + 1));
    }
  }
  acc += Rational(static_cast<unsigned long>(count), static_cast<unsigned long>(n));
  acc.canonicalize();
  return acc;
}

DensityReport density_estimate(const std::vector<std::size_t>& lambda, const std::vector<std::size_t>& ns,
                               std::size_t exact_limit) {
  require_index_set(lambda);
  DensityReport out;
  std::vector<std::size_t> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  std::size_t prev_count = 0, prev_n = 0;
  for (std::size_t n : sorted) {
    if (n == 0) throw UsageError("density_estimate: sample points must be >= 1");
    DensitySample s;
    s.n = n;
    s.count = count_upto(lambda, n);
    s.density = static_cast<double>(s.count) / static_cast<double>(n);
    long double h = 0;
    for (std::size_t k : lambda) {
      if (k > n) break;
      h += 1.0L / static_cast<long double>(k);
    }
    s.harmonic = static_cast<double>(h);
    if (n <= exact_limit) {
      const Rational lhs = harmonic_sum(lambda, n);
      const Rational rhs = abel_right_side(lambda, n);
      s.abel_checked = true;
      s.abel_equal = lhs == rhs;
      s.abel_lhs = to_string(lhs);
      s.abel_rhs = to_string(rhs);
    }
    if (n >= prev_n && s.count < prev_count) out.counting_monotone = false;
    if (s.count > n) out.counting_bounded = false;
    prev_count = s.count;
    prev_n = n;
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace dcsharp
