#include "dcsharp/report.hpp"

#include <cmath>

#include "dcsharp/errors.hpp"
#include "dcsharp/sequence_spec.hpp"

namespace dcsharp {

const char* version() { return "0.1.0"; }

Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json to_json(const LogMagnitude& x) { return x.is_zero() ? Json(nullptr) : json_number(x.log_abs()); }

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(json_number(x));
  return out;
}

Json entry_json(const BoundEntry& e) {
  return Json{{"label", e.label},
              {"point", {json_number(e.point[0]), json_number(e.point[1])}},
              {"alpha", {e.alpha.first, e.alpha.second}},
              {"lhs_log", json_number(e.lhs_log)},
              {"rhs_log", json_number(e.rhs_log)},
              {"margin_log", json_number(e.margin_log)},
              {"pass", e.pass}};
}

}  // namespace

Json to_json(const LogConvexityReport& r) {
  return Json{{"horizon", r.horizon},
              {"normalized", r.normalized},
              {"log_convex", r.log_convex},
              {"first_violation", optional_json(r.first_violation)}};
}

Json to_json(const ClosureReport& r) {
  return Json{{"K", r.K}, {"sup_log", to_json(r.sup)}, {"sup", json_number(r.sup.to_double())}, {"argsup", r.argsup}};
}

Json to_json(const QuasianalyticityReport& r) {
  return Json{{"K", r.K},
              {"threshold", r.threshold},
              {"ns", r.ns},
              {"partial_sums", numbers(r.partial_sums)},
              {"doubling_increments", numbers(r.doubling_increments)},
              {"trend", to_string(r.trend)}};
}

Json to_json(const ComparisonReport& r) {
  return Json{{"K", r.K},
              {"sup_ratio_root_log", to_json(r.sup_ratio_root)},
              {"argsup", r.argsup},
              {"inf_ratio_root_log", to_json(r.inf_ratio_root)},
              {"arginf", r.arginf},
              {"growth", json_number(r.growth)},
              {"verdict", to_string(r.verdict)}};
}

Json to_json(const SquareVsShiftReport& r) {
  return Json{{"K", r.K},
              {"log_inf_first", json_number(r.log_inf_first)},
              {"log_inf_second", json_number(r.log_inf_second)},
              {"arginf_second", r.arginf_second},
              {"inequality_holds", r.inequality_holds},
              {"violations", r.violations},
              {"square_below_shift", r.square_below_shift}};
}

Json to_json(const DensityReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json j{{"n", s.n}, {"count", s.count}, {"density", json_number(s.density)}, {"harmonic", json_number(s.harmonic)}};
    if (s.abel_checked) {
      j["abel_equal"] = s.abel_equal;
      j["abel_lhs"] = s.abel_lhs;
      j["abel_rhs"] = s.abel_rhs;
    }
    samples.push_back(std::move(j));
  }
  return Json{{"samples", samples},
              {"counting_monotone", r.counting_monotone},
              {"counting_bounded", r.counting_bounded}};
}

Json to_json(const PhiValue& r) {
  return Json{{"phi_log", to_json(r.value)}, {"argmax", r.argmax_n}, {"saturated", r.saturated}};
}

Json to_json(const PhiIdentityCertificate& r) {
  return Json{{"k", r.k},
              {"exact_mode", r.exact_mode},
              {"log_lhs", json_number(r.log_lhs)},
              {"log_rhs", json_number(r.log_rhs)},
              {"log_difference", json_number(r.log_difference)},
              {"exact_equal", optional_json(r.exact_equal)},
              {"argmax", r.argmax_n},
              {"saturated", r.saturated}};
}

Json to_json(const BoundReport& r) {
  Json per = Json::array();
  for (const auto& e : r.per_sample) per.push_back(entry_json(e));
  return Json{{"name", r.name},
              {"inequality", r.inequality},
              {"exact", r.exact},
              {"seed", r.seed},
              {"max_order", r.max_order},
              {"constant", json_number(r.constant)},
              {"checks", r.checks},
              {"failures", r.failures},
              {"passed", r.passed()},
              {"worst", r.worst ? entry_json(*r.worst) : Json(nullptr)},
              {"empirical_label", r.empirical_label},
              {"empirical_constant", json_number(r.empirical_constant)},
              {"notes", r.notes},
              {"per_sample", per}};
}

Json to_json(const GammaData& g) {
  Json entries = Json::array();
  for (const auto& e : g.entries) {
    entries.push_back(Json{{"lambda", e.lambda},
                           {"rho", json_number(e.rho)},
                           {"rho_exact", e.rho_exact ? Json(to_string(*e.rho_exact)) : Json(nullptr)},
                           {"E", json_number(e.E)},
                           {"q", json_number(e.q)},
                           {"x", {json_number(e.E), 0.0}},
                           {"delta", json_number(e.delta)},
                           {"interior", e.interior},
                           {"log_weight", json_number(e.log_weight)}});
  }
  return Json{{"family", g.M.spec()},
              {"E", g.E.spec()},
              {"lambda_max", g.lambda_max},
              {"lambda", g.lambdas()},
              {"epsilon", json_number(g.epsilon)},
              {"epsilon_lower", to_string(g.epsilon_lower)},
              {"B", json_number(g.B)},
              {"entries", entries}};
}

Json to_json(const DeltaReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"lambda", e.lambda},
                           {"delta", json_number(e.delta)},
                           {"half_E", json_number(e.half_E)},
                           {"interior", e.interior},
                           {"gap_ok", e.gap_ok},
                           {"hypothesis_rhs", json_number(e.hypothesis_rhs)},
                           {"hypothesis_ok", e.hypothesis_ok}});
  }
  return Json{{"entries", entries},
              {"gaps_ok", r.gaps_ok},
              {"lambda0_in_range", optional_json(r.lambda0_in_range)},
              {"projected_lambda0", r.projected_lambda0 ? json_number(*r.projected_lambda0) : Json(nullptr)}};
}

Json to_json(const LowerBoundCertificate& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"lambda", e.lambda},
                           {"lhs_log", json_number(e.lhs_log)},
                           {"rhs_log", json_number(e.rhs_log)},
                           {"margin_log", json_number(e.lhs_log - e.rhs_log)},
                           {"pass", e.pass},
                           {"dominant_log", json_number(e.dominant_log)},
                           {"dominant_bound_log", json_number(e.dominant_bound_log)},
                           {"dominant_ok", e.dominant_ok},
                           {"unweighted_bound_log", json_number(e.unweighted_bound_log)},
                           {"unweighted_bound_ok", e.unweighted_bound_ok},
                           {"dominant_identity", e.dominant_identity},
                           {"cross_log", json_number(e.cross_log)},
                           {"cross_bound_log", json_number(e.cross_bound_log)},
                           {"bracket_ok", e.bracket_ok},
                           {"hypothesis_ok", e.hypothesis_ok}});
  }
  return Json{{"terms", r.terms}, {"passed", r.passed()}, {"entries", entries}};
}

Json to_json(const SharpnessCertificate& r) {
  Json rows = Json::array();
  for (const auto& e : r.rows) {
    rows.push_back(Json{{"lambda", e.lambda},
                        {"lhs_log", json_number(e.lhs_log)},
                        {"lhs_upper_log", json_number(e.lhs_upper_log)},
                        {"rhs_log", json_number(e.rhs_log)},
                        {"ratio_root", json_number(e.ratio_root)},
                        {"main_constant", json_number(e.main_constant)},
                        {"implied_bound", json_number(e.implied_bound)}});
  }
  return Json{{"N", r.N_spec},
              {"hypothesis", r.hypothesis},
              {"verdict", r.verdict},
              {"compare_K", r.compare_K},
              {"increasing", r.increasing},
              {"bounded", r.bounded},
              {"fitted_constant", json_number(r.fitted_constant)},
              {"bound_constant", json_number(r.bound_constant)},
              {"passed", r.passed()},
              {"rows", rows}};
}

Json to_json(const LambdaSchedule& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    entries.push_back(Json{{"value", optional_json(e.value)},
                           {"log_value", json_number(e.log_value)},
                           {"log_gap", json_number(e.log_gap)},
                           {"cluster", e.cluster},
                           {"role", to_string(e.role)}});
  }
  Json pairs = Json::array();
  for (auto [a, b] : s.doubled_pairs()) pairs.push_back({a, b});
  return Json{{"pairs", s.pairs},
              {"warmup", s.warmup},
              {"integer_prefix", s.integer_prefix},
              {"cluster_start", s.cluster_start},
              {"doubled", s.doubled},
              {"doubled_pairs", pairs},
              {"log_v", numbers(s.log_v)},
              {"entries", entries}};
}

Json to_json(const SlowSequenceReport& r) {
  return Json{{"count", r.count},
              {"increasing", r.increasing},
              {"ratio_decreasing_to_one", r.ratio_decreasing_to_one},
              {"doubling_ratio_increasing", r.doubling_ratio_increasing},
              {"last_doubling_log_ratio", json_number(r.last_doubling_log_ratio)}};
}

Json to_json(const LogConvexCheck& r) {
  return Json{{"K", r.K},
              {"nondecreasing", r.nondecreasing},
              {"first_violation", optional_json(r.first_violation)},
              {"boundaries_checked", r.boundaries_checked},
              {"constant_within_blocks", r.constant_within_blocks},
              {"generic_validation", r.generic_validation}};
}

Json to_json(const DiffClosedCheck& r) {
  return Json{{"K", r.K},
              {"sup_b", json_number(r.sup_b)},
              {"argsup", r.argsup},
              {"max_boundary_jump_sq", json_number(r.max_boundary_jump_sq)},
              {"bounded_by_four", r.bounded_by_four},
              {"step_bound_violations", r.step_bound_violations}};
}

Json to_json(const QuasianalyticCheck& r) {
  Json chain = Json::array();
  for (const auto& c : r.chain) {
    chain.push_back(Json{{"block", c.block},
                         {"lambda_lo", c.lambda_lo},
                         {"lambda_hi", c.lambda_hi},
                         {"chunk_sum", json_number(c.chunk_sum)},
                         {"lower_bound", json_number(c.lower_bound)},
                         {"holds", c.holds}});
  }
  return Json{{"K", r.K},
              {"ns", r.ns},
              {"direct_partial_sums", numbers(r.direct_partial_sums)},
              {"chain_holds", r.chain_holds},
              {"chain", chain},
              {"gap_partial_sums", numbers(r.gap_partial_sums)},
              {"min_sum_per_pair", json_number(r.min_sum_per_pair)},
              {"trend", r.trend}};
}

Json to_json(const StrictGapCheck& r) {
  return Json{{"K", r.K},
              {"max_identity_error", json_number(r.max_identity_error)},
              {"identity_holds", r.identity_holds},
              {"within_unit_interval", r.within_unit_interval},
              {"first_exact_one", optional_json(r.first_exact_one)},
              {"exact_one_count", r.exact_one_count},
              {"min_g", json_number(r.min_g)},
              {"argmin", r.argmin},
              {"first_below_tenth", optional_json(r.first_below_tenth)}};
}

Json to_json(const LiteralDiagnostic& r) {
  return Json{{"K", r.K}, {"first_violation", optional_json(r.first_violation)}};
}

GammaData gamma_from_json(const Json& j) {
  try {
    const auto M = parse_sequence(j.at("family").get<std::string>());
    const auto E = EFunction::parse(j.at("E").get<std::string>());
    const auto lambdas = j.at("lambda").get<std::vector<std::size_t>>();
    return gamma_from_lambdas(M, E, lambdas, j.at("lambda_max").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed Gamma JSON: ") + e.what());
  }
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::diagnostic: return "diagnostic";
  }
  return "diagnostic";
}

ReportEnvelope::ReportEnvelope(std::string command, Json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void ReportEnvelope::add(std::string name, CheckStatus status, Json payload) {
  if (status == CheckStatus::fail) failed_ = true;
  checks_.push_back(Json{{"name", std::move(name)}, {"status", to_string(status)}, {"payload", std::move(payload)}});
}

void ReportEnvelope::add_check(std::string name, bool passed, Json payload) {
  add(std::move(name), passed ? CheckStatus::pass : CheckStatus::fail, std::move(payload));
}

bool ReportEnvelope::failed() const { return failed_; }

Json ReportEnvelope::to_json(std::optional<double> elapsed_ms) const {
  Json out{{"tool", kToolName}, {"version", version()}, {"command", command_}, {"config", config_}};
  if (elapsed_ms) out["elapsed_ms"] = *elapsed_ms;
  out["checks"] = checks_;
  out["status"] = failed_ ? "fail" : "pass";
  return out;
}

}  // namespace dcsharp
