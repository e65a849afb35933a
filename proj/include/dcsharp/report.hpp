#pragma once

// JSON views of every report plus the envelope the CLI emits.  Field order is
// fixed (ordered_json) so identical runs give identical bytes.  Non-finite
// numbers (log 0 = -inf, missing gaps) serialize as null.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcsharp/bound_report.hpp"
#include "dcsharp/counterexample.hpp"
#include "dcsharp/density.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/flat.hpp"
#include "dcsharp/ostrowski.hpp"
#include "dcsharp/weights.hpp"

namespace dcsharp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "dcsharp";
const char* version();

Json json_number(double x);
Json to_json(const LogMagnitude& x);  // natural log of |x|, null for zero

Json to_json(const LogConvexityReport& r);
Json to_json(const ClosureReport& r);
Json to_json(const QuasianalyticityReport& r);
Json to_json(const ComparisonReport& r);
Json to_json(const SquareVsShiftReport& r);
Json to_json(const DensityReport& r);
Json to_json(const PhiValue& r);
Json to_json(const PhiIdentityCertificate& r);
Json to_json(const BoundReport& r);

Json to_json(const GammaData& g);
Json to_json(const DeltaReport& r);
Json to_json(const LowerBoundCertificate& r);
Json to_json(const SharpnessCertificate& r);

Json to_json(const LambdaSchedule& s);
Json to_json(const SlowSequenceReport& r);
Json to_json(const LogConvexCheck& r);
Json to_json(const DiffClosedCheck& r);
Json to_json(const QuasianalyticCheck& r);
Json to_json(const StrictGapCheck& r);
Json to_json(const LiteralDiagnostic& r);

/// Rebuilds Gamma from the JSON written by to_json(GammaData): the family, E
/// and Lambda are read back and every derived quantity is recomputed.
GammaData gamma_from_json(const Json& j);

enum class CheckStatus { pass, fail, diagnostic };
std::string to_string(CheckStatus s);

class ReportEnvelope {
 public:
  ReportEnvelope(std::string command, Json config);

  void set_config(Json config) { config_ = std::move(config); }
  void add(std::string name, CheckStatus status, Json payload);
  void add_check(std::string name, bool passed, Json payload);
  bool failed() const;
  Json to_json(std::optional<double> elapsed_ms = std::nullopt) const;

 private:
  std::string command_;
  Json config_;
  Json checks_ = Json::array();
  bool failed_ = false;
};

}  // namespace dcsharp
