#include "dcsharp/bound_report.hpp"

#include <algorithm>
#include <limits>

#include "dcsharp/errors.hpp"

namespace dcsharp {

void BoundReport::begin_sample(std::string label, std::array<double, 2> point) {
  BoundEntry e;
  e.label = std::move(label);
  e.point = point;
  e.margin_log = std::numeric_limits<double>::infinity();
  per_sample.push_back(std::move(e));
  open_ = true;
}

void BoundReport::record(Multiindex alpha, double lhs_log, double rhs_log, bool pass) {
  if (!open_) throw UsageError("BoundReport::record before begin_sample");
  ++checks;
  if (!pass) ++failures;
  const double margin = rhs_log - lhs_log;
  BoundEntry& cur = per_sample.back();
  // A failure always wins over a passing entry with a smaller computed margin.
  const bool tighter = (!pass && cur.pass) || (pass == cur.pass && margin < cur.margin_log);
  if (tighter) {
    cur.alpha = alpha;
    cur.lhs_log = lhs_log;
    cur.rhs_log = rhs_log;
    cur.margin_log = margin;
    cur.pass = pass;
  }
  if (!worst || (!cur.pass && worst->pass) || (cur.pass == worst->pass && cur.margin_log < worst->margin_log))
    worst = cur;
}

void BoundReport::observe_constant(double value) { empirical_constant = std::max(empirical_constant, value); }

}  // namespace dcsharp
