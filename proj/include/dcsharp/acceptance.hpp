#pragma once

// The eleven acceptance criteria, each with its runtime limit.  A criterion
// passes only when its checks hold and it finishes inside the limit.

#include <functional>
#include <string>
#include <vector>

namespace dcsharp::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;   // checks and runtime
  bool checks_ok = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<bool(std::string& detail)> run;
};

const std::vector<Criterion>& criteria();
CriterionResult run(const Criterion& c);
/// ids empty: all of them.
std::vector<CriterionResult> run_all(const std::vector<int>& ids = {});
/// "[PASS] 3 base lower bound (0.02 s < 5 s): ...".
std::string format(const CriterionResult& r);

}  // namespace dcsharp::acceptance
