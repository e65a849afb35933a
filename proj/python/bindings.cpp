#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcsharp/acceptance.hpp"
#include "dcsharp/counterexample.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/flat.hpp"
#include "dcsharp/ostrowski.hpp"
#include "dcsharp/report.hpp"
#include "dcsharp/sequence_spec.hpp"

namespace py = pybind11;
using namespace dcsharp;

namespace {

// reports cross the boundary as JSON text; the python side turns them into dicts
std::string dump(const Json& j) { return j.dump(); }

std::string gamma_json(const std::string& family, const std::string& E, std::size_t lambda_max) {
  const auto G = build_gamma(parse_sequence(family), EFunction::parse(E), lambda_max);
  Json j = to_json(G);
  j["family"] = family;
  return dump(j);
}

std::string lower_bound_json(const std::string& gamma, const std::vector<std::size_t>& lambdas) {
  const auto G = gamma_from_json(Json::parse(gamma));
  int top = 0;
  for (auto l : lambdas) top = std::max(top, static_cast<int>(l));
  const auto h = truncate_base_function(G.M, flat_terms(top));
  return dump(to_json(lower_bound_certificate(G, h, lambdas)));
}

std::string sharpness_json(const std::string& gamma, const std::string& N, std::vector<std::size_t> lambdas) {
  const auto G = gamma_from_json(Json::parse(gamma));
  if (lambdas.empty()) lambdas = G.lambdas();
  int top = 0;
  for (auto l : lambdas) top = std::max(top, static_cast<int>(l));
  const auto h = truncate_base_function(G.M, flat_terms(top));
  return dump(to_json(sharpness_certificate(G, h, parse_sequence(N), lambdas)));
}

std::string counterexample_json(std::size_t pairs, std::size_t K) {
  const auto S = build_counterexample(pairs, kDefaultWarmup);
  Json j{{"schedule", to_json(S.family->schedule())},
         {"log_convex", to_json(verify_log_convex(S, K))},
         {"diff_closed", to_json(verify_diff_closed(S, K))},
         {"quasianalytic", to_json(verify_quasianalytic_diag(S, K))},
         {"strict_gap", to_json(verify_strict_gap(S, K))}};
  return dump(j);
}

}  // namespace

PYBIND11_MODULE(_dcsharp, m) {
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<HorizonError>(m, "HorizonError", PyExc_OverflowError);

  m.attr("__version__") = std::string(version());

  py::class_<WeightSequence>(m, "WeightSequence")
      .def_property_readonly("spec", &WeightSequence::spec)
      .def_property_readonly("has_exact", &WeightSequence::has_exact)
      .def("log_weight", &WeightSequence::log_weight, py::arg("k"))
      .def("log_ratio", &WeightSequence::log_ratio, py::arg("k"))
      .def("__repr__", [](const WeightSequence& s) { return "<WeightSequence " + s.spec() + ">"; });

  m.def("parse_sequence", [](const std::string& s) { return parse_sequence(s); }, py::arg("spec"));

  m.def(
      "phi_log",
      [](const WeightSequence& M, double log_r, std::size_t horizon) {
        auto v = phi_log(M, log_r, horizon);
        return py::make_tuple(v.value.log_abs(), v.argmax_n, v.saturated);
      },
      py::arg("M"), py::arg("log_r"), py::arg("horizon") = kDefaultPhiHorizon);

  m.def("_log_convexity", [](const WeightSequence& M, std::size_t K) {
    return dump(to_json(check_log_convex(M, K, M.has_exact())));
  });
  m.def("_quasianalyticity", [](const WeightSequence& M, std::size_t K) {
    return dump(to_json(quasianalyticity_diagnostic(M, K)));
  });
  m.def("_compare", [](const WeightSequence& N, const WeightSequence& M, std::size_t K) {
    return dump(to_json(compare(N, M, K)));
  });
  m.def("_gamma", &gamma_json);
  m.def("_lower_bound", &lower_bound_json);
  m.def("_sharpness", &sharpness_json);
  m.def("_counterexample", &counterexample_json);

  m.def(
      "selftest",
      [](const std::vector<int>& ids) {
        std::vector<std::pair<std::string, bool>> out;
        for (const auto& r : acceptance::run_all(ids)) out.emplace_back(acceptance::format(r), r.passed);
        return out;
      },
      py::arg("criteria") = std::vector<int>{}, py::call_guard<py::gil_scoped_release>());
}
