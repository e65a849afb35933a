#include "dcsharp/sequence_spec.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dcsharp/counterexample.hpp"
#include "dcsharp/errors.hpp"

namespace dcsharp {

namespace {

std::pair<std::string_view, std::string_view> split_head(std::string_view s) {
  const auto pos = s.find(':');
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string str(text);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(str, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != str.size()) throw UsageError("bad number '" + str + "' in " + std::string(what));
  return value;
}

unsigned long parse_unsigned(std::string_view text, std::string_view what) {
  unsigned long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw UsageError("bad integer '" + std::string(text) + "' in " + std::string(what));
  return value;
}

}  // namespace

std::vector<double> read_log_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open custom sequence file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) values.push_back(parse_double(token, path));
  }
  return values;
}

WeightSequence parse_sequence(std::string_view spec) {
  auto [head, rest] = split_head(spec);
  if (head == "analytic") {
    if (!rest.empty()) throw UsageError("analytic takes no parameters");
    return WeightSequence::analytic();
  }
  if (head == "gevrey") return WeightSequence::gevrey(parse_double(rest, "gevrey:<s>"));
  if (head == "logpow") return WeightSequence::log_power(parse_double(rest, "logpow:<c>"));
  if (head == "custom") {
    if (rest.empty()) throw UsageError("custom:<path> needs a file path");
    return WeightSequence::custom(read_log_table(std::string(rest)));
  }
  if (head == "shift" || head == "power") {
    auto [p, inner] = split_head(rest);
    if (inner.empty()) throw UsageError(std::string(head) + ":<p>:<spec> needs an inner spec");
    const auto pv = parse_unsigned(p, head);
    if (pv < 1) throw UsageError(std::string(head) + ": p must be >= 1");
    auto base = parse_sequence(inner);
    return head == "shift" ? base.shift(static_cast<unsigned>(pv)) : base.power(static_cast<unsigned>(pv));
  }
  if (head == "counterexample") {
    std::size_t pairs = kDefaultPairs, warmup = kDefaultWarmup;
    if (!rest.empty()) {
      auto [a, b] = split_head(rest);
      pairs = parse_unsigned(a, "counterexample:<pairs>");
      if (!b.empty()) warmup = parse_unsigned(b, "counterexample:<pairs>:<warmup>");
    }
    return build_counterexample(pairs, warmup).sequence;
  }
  throw UsageError("unknown sequence family '" + std::string(spec) + "'");
}

}  // namespace dcsharp
