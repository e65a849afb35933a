#pragma once

// String specs for weight sequences:
//   analytic | gevrey:<s> | logpow:<c> | custom:<path>
//   shift:<p>:<spec> | power:<p>:<spec> | counterexample[:<pairs>[:<warmup>]]
// A custom file holds log M_0, log M_1, ... separated by whitespace; '#'
// starts a comment.

#include <string_view>
#include <vector>

#include "dcsharp/weights.hpp"

namespace dcsharp {

/// Throws UsageError for malformed specs; family constructors may throw
/// DomainError or ValidationError.
WeightSequence parse_sequence(std::string_view spec);

std::vector<double> read_log_table(const std::string& path);

}  // namespace dcsharp
