#pragma once

// Result of a sweep that checks |lhs| <= rhs at many (sample, alpha) pairs.
// Sides are kept as natural logs; margin = rhs_log - lhs_log.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcsharp/jet2.hpp"

namespace dcsharp {

struct BoundEntry {
  std::string label;
  std::array<double, 2> point{};
  Multiindex alpha;
  double lhs_log = 0;
  double rhs_log = 0;
  double margin_log = 0;
  bool pass = true;
};

struct BoundReport {
  std::string name;
  std::string inequality;
  bool exact = false;
  std::uint64_t seed = 0;
  int max_order = 0;
  double constant = 0;  // constant under test (C, 8, ...), 0 when none
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<BoundEntry> per_sample;  // tightest alpha at each sample
  std::optional<BoundEntry> worst;
  std::string empirical_label;
  double empirical_constant = 0;
  std::vector<std::string> notes;

  bool passed() const { return checks > 0 && failures == 0; }

  void begin_sample(std::string label, std::array<double, 2> point);
  /// Records one comparison; the per-sample entry keeps the smallest margin.
  void record(Multiindex alpha, double lhs_log, double rhs_log, bool pass);
  void observe_constant(double value);

 private:
  bool open_ = false;
};

}  // namespace dcsharp
