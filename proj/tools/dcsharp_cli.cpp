// dcsharp command-line front end.  Every subcommand builds a ReportEnvelope;
// JSON goes to --json, $DCSHARP_OUTPUT_DIR/<command>.json or stdout, CSV to
// --csv, $DCSHARP_OUTPUT_DIR/<command>.csv or (for the CSV-first commands
// ostrowski and certify) stdout.  Exit 0: no failed check, 1: a check failed,
// 2: usage error.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dcsharp/acceptance.hpp"
#include "dcsharp/blocks.hpp"
#include "dcsharp/bricks.hpp"
#include "dcsharp/counterexample.hpp"
#include "dcsharp/diagnostics.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/flat.hpp"
#include "dcsharp/ostrowski.hpp"
#include "dcsharp/report.hpp"
#include "dcsharp/sequence_spec.hpp"

using namespace dcsharp;

namespace {

struct Common {
  std::string json_path;
  std::string csv_path;
  bool timing = false;
  std::uint64_t seed = 20240901;
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool primary = false;  // goes to stdout when no destination is given
};

struct Outcome {
  ReportEnvelope envelope;
  std::optional<Csv> csv;
};

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string num(std::size_t x) { return std::to_string(x); }

// ------------------------------------------------------------------ analyze

struct AnalyzeOpts {
  std::string family = "gevrey:1";
  std::size_t K = 200;
};

Outcome run_analyze(const AnalyzeOpts& o, const Common& c) {
  const auto M = parse_sequence(o.family);
  Json config{{"family", o.family}, {"K", o.K}, {"seed", c.seed}};
  Outcome out{ReportEnvelope("analyze", config), std::nullopt};
  auto& env = out.envelope;

  auto lc = check_log_convex(M, o.K, M.has_exact());
  env.add_check("log-convexity", lc.normalized && lc.log_convex, to_json(lc));
  env.add("closure", CheckStatus::diagnostic, to_json(closure_diagnostic(M, o.K)));
  env.add("quasianalyticity", CheckStatus::diagnostic, to_json(quasianalyticity_diagnostic(M, o.K)));
  auto sq = square_vs_shift_diagnostic(M, o.K);
  env.add_check("square-vs-shift", sq.inequality_holds && sq.square_below_shift, to_json(sq));

  Json ids = Json::array();
  bool ids_ok = true;
  for (std::size_t k = 0; k <= std::min<std::size_t>(o.K, 30); ++k) {
    auto cert = verify_phi_identity(M, k);
    ids_ok = ids_ok && cert.passed();
    ids.push_back(to_json(cert));
  }
  env.add_check("phi-identity", ids_ok, ids);
  return out;
}

// ------------------------------------------------------------------ compare

struct CompareOpts {
  std::string N = "analytic";
  std::string M = "gevrey:1";
  std::size_t K = 200;
};

Outcome run_compare(const CompareOpts& o, const Common& c) {
  const auto N = parse_sequence(o.N);
  const auto M = parse_sequence(o.M);
  Json config{{"N", o.N}, {"M", o.M}, {"K", o.K}, {"seed", c.seed}};
  Outcome out{ReportEnvelope("compare", config), std::nullopt};
  out.envelope.add("comparison", CheckStatus::diagnostic, to_json(compare(N, M, o.K)));
  return out;
}

// ------------------------------------------------------------------ ostrowski

struct OstrowskiOpts {
  std::string family = "gevrey:1";
  double r_min = 1;
  double r_max = 1e6;
  std::size_t points = 61;
  std::size_t horizon = kDefaultPhiHorizon;
};

Outcome run_ostrowski(const OstrowskiOpts& o, const Common& c) {
  if (!(o.r_min > 0) || !(o.r_max >= o.r_min)) throw UsageError("need 0 < r-min <= r-max");
  if (o.points < 1) throw UsageError("need at least one point");
  const auto M = parse_sequence(o.family);
  Json config{{"family", o.family}, {"r_min", o.r_min}, {"r_max", o.r_max}, {"points", o.points},
              {"horizon", o.horizon}, {"seed", c.seed}};
  Outcome out{ReportEnvelope("ostrowski", config), Csv{{"r", "phi_log", "argmax"}, {}, true}};
  const double lo = std::log(o.r_min), hi = std::log(o.r_max);
  double prev = -std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::size_t saturated = 0;
  for (std::size_t i = 0; i < o.points; ++i) {
    const double t = o.points > 1 ? static_cast<double>(i) / static_cast<double>(o.points - 1) : 0.0;
    const double log_r = lo + t * (hi - lo);
    auto v = phi_log(M, log_r, o.horizon);
    const double pl = v.value.log_abs();
    if (pl < prev) monotone = false;
    prev = pl;
    if (v.saturated) ++saturated;
    out.csv->rows.push_back({num(std::exp(log_r)), num(pl), num(v.argmax_n)});
  }
  out.envelope.add_check("phi-monotone", monotone, Json{{"points", o.points}});
  out.envelope.add("phi-grid", CheckStatus::diagnostic, Json{{"points", o.points}, {"saturated", saturated}});
  return out;
}

// ------------------------------------------------------------------ verify-bounds

struct BoundsOpts {
  std::string target;
  std::string family = "gevrey:1";
  std::optional<std::size_t> samples;
  std::optional<int> max_order;
  std::optional<std::size_t> K;
  std::optional<double> q, m, rho, C;
};

std::vector<RationalPoint> brick_points(const BrickParams& p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = p.rho * p.q + p.rho * u(rng), b = p.rho * u(rng);
    out.push_back({to_rational(a), to_rational(b)});
  }
  return out;
}

Csv axis_profile(const std::function<double(double, double)>& f, double center) {
  Csv csv{{"t", "along_x1", "along_x2"}, {}, false};
  for (int i = -30; i <= 30; ++i) {
    const double t = i / 10.0;
    csv.rows.push_back({num(t), num(f(center + t, 0.0)), num(f(center, t))});
  }
  return csv;
}

Outcome run_bounds(const BoundsOpts& o, const Common& c) {
  Json config{{"target", o.target}};
  Outcome out{ReportEnvelope("verify-bounds", Json::object()), std::nullopt};
  auto& env = out.envelope;
  BoundReport report;

  if (o.target == "brick" || o.target == "polar-brick") {
    BrickParams p{o.q.value_or(2.0), o.m.value_or(3.0), o.rho.value_or(0.4)};
    p.validate();
    if (o.target == "brick") {
      const std::size_t n = o.samples.value_or(100);
      const int D = o.max_order.value_or(8);
      config.update(Json{{"samples", n}, {"max_order", D}, {"q", p.q}, {"m", p.m}, {"rho", p.rho}});
      auto cauchy = cauchy_bound_sweep(n, D, c.seed);
      cauchy.seed = c.seed;
      env.add_check("cauchy-kernel", cauchy.passed(), to_json(cauchy));
      report = brick_remark_check(p, brick_points(p, n, c.seed), D);
      report.seed = c.seed;
      out.csv = axis_profile([&](double a, double b) { return brick_eval(p, {a, b}); }, p.rho * p.q);
    } else {
      const std::size_t n = o.samples.value_or(200);
      const int D = o.max_order.value_or(6);
      const double C = o.C.value_or(kBrickPolarConstant);
      const bool fixed = o.q || o.m || o.rho;
      config.update(Json{{"samples", n}, {"max_order", D}, {"C", C}, {"fixed_params", fixed}});
      if (fixed) config.update(Json{{"q", p.q}, {"m", p.m}, {"rho", p.rho}});
      report = polar_brick_bound_check(polar_samples(n, c.seed, fixed ? std::optional(p) : std::nullopt), D, C);
      report.seed = c.seed;
    }
  } else if (o.target == "base" || o.target == "block" || o.target == "polar-block") {
    const auto M = parse_sequence(o.family);
    config["family"] = o.family;
    if (o.target == "base") {
      const int D = o.max_order.value_or(6);
      const std::size_t K = o.K.value_or(default_terms(D));
      config.update(Json{{"max_order", D}, {"K", K}});
      const auto h = truncate_base_function(M, K);
      report = base_upper_check(h, default_base_grid(), D);
      if (h.exact()) {
        Json rows = Json::array();
        bool ok = true;
        for (unsigned n = 1; 2 * n <= static_cast<unsigned>(std::max(D, 2)); ++n) {
          auto d = h_axis_x2_derivative_exact(h, 0, 2 * n);
          const Rational lhs = abs(d.value) - d.tail_bound;
          const Rational bound = factorial(2 * n) * M.exact_weight(2 * n) / pow(Rational(4), n);
          ok = ok && lhs >= bound;
          rows.push_back(Json{{"n", n}, {"lhs_log", json_number(log_abs(lhs))}, {"rhs_log", json_number(log_abs(bound))}});
        }
        env.add_check("base-lower", ok, rows);
      }
      out.csv = axis_profile([&](double a, double b) { return h_eval(h, {a, b}).value; }, 0.0);
    } else if (o.target == "block") {
      const std::size_t n = o.samples.value_or(20);
      const int D = o.max_order.value_or(4);
      const std::size_t K = o.K.value_or(default_terms(D));
      BlockParams bp{o.q.value_or(2.0), o.rho.value_or(0.5)};
      bp.validate();
      config.update(Json{{"samples", n}, {"max_order", D}, {"K", K}, {"q", bp.q}, {"rho", bp.rho}});
      const auto h = truncate_base_function(M, K);
      if (!h.exact()) throw UsageError("verify-bounds --target block needs a family with exact values");
      report = block_upper_check(bp, h, block_sample_points(bp, n, c.seed), D);
      report.seed = c.seed;
      auto axis = block_axis_derivative(bp, h, 2);
      env.add("block-axis", CheckStatus::diagnostic,
              Json{{"order", 2}, {"value_log", json_number(log_abs(axis.value))},
                   {"tail_bound_log", json_number(axis.tail_bound == 0 ? -INFINITY : log_abs(axis.tail_bound))}});
      out.csv = axis_profile(
          [&](double a, double b) { return h_eval(h, {a / bp.rho - bp.q, b / bp.rho}).value; }, bp.rho * bp.q);
    } else {
      const std::size_t n = o.samples.value_or(200);
      const int D = o.max_order.value_or(5);
      const std::size_t K = o.K.value_or(60);
      const double C = o.C.value_or(kBlockPolarConstant);
      const bool fixed = o.q || o.rho;
      BlockParams bp{o.q.value_or(2.0), o.rho.value_or(0.5)};
      bp.validate();
      config.update(Json{{"samples", n}, {"max_order", D}, {"K", K}, {"C", C}, {"fixed_params", fixed}});
      const auto h = truncate_base_function(M, K);
      report = polar_block_bound_check(h, polar_block_samples(n, c.seed, fixed ? std::optional(bp) : std::nullopt),
                                       D, C);
      report.seed = c.seed;
    }
  } else {
    throw UsageError("unknown target '" + o.target + "' (brick, polar-brick, base, block, polar-block)");
  }
  config["seed"] = c.seed;
  env.set_config(config);
  env.add_check(o.target, report.passed(), to_json(report));
  return out;
}

// ------------------------------------------------------------------ construct-flat / certify

struct FlatOpts {
  std::string family = "gevrey:1";
  std::string E = "sqrt";
  std::size_t lambda_max = 64;
  std::vector<std::size_t> candidates;
  std::vector<std::size_t> lambdas;
  bool upper = false;
  std::size_t samples = 50;
  int max_order = 5;
};

Json gamma_json(const GammaData& G, const std::string& family_spec) {
  Json j = to_json(G);
  j["family"] = family_spec;
  return j;
}

std::vector<std::size_t> default_lambdas(const GammaData& G, const std::vector<std::size_t>& requested,
                                         std::size_t count) {
  if (!requested.empty()) return requested;
  auto all = G.lambdas();
  if (all.size() > count) all.resize(count);
  return all;
}

Outcome run_construct(const FlatOpts& o, const Common& c) {
  const auto M = parse_sequence(o.family);
  const auto E = EFunction::parse(o.E);
  Json config{{"family", o.family}, {"E", o.E}, {"lambda_max", o.lambda_max}};
  if (!o.candidates.empty()) config["candidates"] = o.candidates;
  if (!o.lambdas.empty()) config["lambdas"] = o.lambdas;
  config["upper"] = o.upper;
  if (o.upper) config.update(Json{{"samples", o.samples}, {"max_order", o.max_order}});
  config["seed"] = c.seed;
  Outcome out{ReportEnvelope("construct-flat", config), std::nullopt};
  auto& env = out.envelope;

  const auto G = build_gamma(M, E, o.lambda_max,
                             o.candidates.empty() ? std::nullopt : std::optional(o.candidates));
  env.add_check("gamma", true, gamma_json(G, o.family));
  const auto gaps = delta_gaps(G);
  env.add_check("gaps", gaps.gaps_ok, to_json(gaps));

  const auto lambdas = default_lambdas(G, o.lambdas, 2);
  if (G.exact()) {
    int top = 0;
    for (auto l : lambdas) top = std::max(top, static_cast<int>(l));
    const auto h = truncate_base_function(M, flat_terms(top));
    auto cert = lower_bound_certificate(G, h, lambdas);
    env.add_check("lower-bound", cert.passed(), to_json(cert));
  } else {
    env.add("lower-bound", CheckStatus::diagnostic,
            Json{{"skipped", "'" + M.spec() + "' has no exact values; use certify for the log-domain table"}});
  }
  if (o.upper) {
    const auto h = truncate_base_function(M, default_terms(o.max_order));
    const auto samples = flat_samples(o.samples, c.seed);
    auto cart = upper_bound_sweep(G, h, samples, o.max_order);
    cart.seed = c.seed;
    env.add_check("upper-bound", cart.passed(), to_json(cart));
    auto polar = polar_upper_bound_sweep(G, h, samples, o.max_order);
    polar.seed = c.seed;
    env.add_check("polar-upper-bound", polar.passed(), to_json(polar));
  }
  return out;
}

struct CertifyOpts {
  std::string gamma_path;
  std::string N = "gevrey:1.5";
  std::vector<std::size_t> lambdas;
  std::size_t compare_K = 0;
};

Json load_gamma_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open Gamma file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not JSON: " + e.what());
  }
  if (j.contains("checks")) {
    for (const auto& chk : j["checks"])
      if (chk.value("name", "") == "gamma") return chk.at("payload");
    throw UsageError("'" + path + "' has no gamma check");
  }
  return j;
}

Outcome run_certify(const CertifyOpts& o, const Common& c) {
  const Json gj = load_gamma_json(o.gamma_path);
  const auto G = gamma_from_json(gj);
  const auto N = parse_sequence(o.N);
  const auto lambdas = default_lambdas(G, o.lambdas, G.entries.size());
  Json config{{"gamma", gj.at("family")}, {"E", gj.at("E")}, {"lambda", G.lambdas()}, {"N", o.N}};
  if (!o.lambdas.empty()) config["lambdas"] = o.lambdas;
  config["compare_K"] = o.compare_K;
  config["seed"] = c.seed;
  Outcome out{ReportEnvelope("certify", config), Csv{{"lambda", "lhs_log", "rhs_log", "ratio_root"}, {}, true}};
  int top = 0;
  for (auto l : lambdas) top = std::max(top, static_cast<int>(l));
  const auto h = truncate_base_function(G.M, flat_terms(top));
  auto cert = sharpness_certificate(G, h, N, lambdas, o.compare_K);
  out.envelope.add_check("sharpness", cert.passed(), to_json(cert));
  for (const auto& r : cert.rows)
    out.csv->rows.push_back({num(r.lambda), num(r.lhs_log), num(r.rhs_log), num(r.ratio_root)});
  return out;
}

// ------------------------------------------------------------------ counterexample

struct CounterOpts {
  std::size_t pairs = kDefaultPairs;
  std::size_t warmup = kDefaultWarmup;
  std::size_t K = 5000;
};

Outcome run_counterexample(const CounterOpts& o, const Common& c) {
  Json config{{"pairs", o.pairs}, {"warmup", o.warmup}, {"K", o.K}, {"seed", c.seed}};
  Outcome out{ReportEnvelope("counterexample", config), Csv{{"k", "a_k", "b_k", "g_k"}, {}, false}};
  auto& env = out.envelope;
  const auto S = build_counterexample(o.pairs, o.warmup);
  env.add("schedule", CheckStatus::diagnostic, to_json(S.family->schedule()));
  auto slow = verify_slow_sequence(std::min<std::size_t>(S.family->schedule().log_v.size() + 1, 200));
  env.add_check("slow-sequence", slow.increasing && slow.ratio_decreasing_to_one, to_json(slow));
  auto lc = verify_log_convex(S, o.K);
  env.add_check("log-convex", lc.nondecreasing && lc.generic_validation, to_json(lc));
  auto dc = verify_diff_closed(S, o.K);
  env.add_check("diff-closed", dc.bounded_by_four, to_json(dc));
  auto qa = verify_quasianalytic_diag(S, o.K);
  bool gap_ok = qa.chain_holds;
  for (std::size_t i = 0; i < qa.gap_partial_sums.size(); ++i)
    gap_ok = gap_ok && qa.gap_partial_sums[i] >= 0.9 * static_cast<double>(i + 1);
  env.add_check("quasianalytic", gap_ok, to_json(qa));
  auto sg = verify_strict_gap(S, o.K);
  env.add_check("strict-gap",
                sg.identity_holds && sg.within_unit_interval && sg.first_exact_one && sg.first_below_tenth,
                to_json(sg));
  env.add("literal-power", CheckStatus::diagnostic, to_json(literal_power_diagnostic(S, o.K)));
  for (const auto& r : counterexample_rows(S, o.K))
    out.csv->rows.push_back({num(r.k), num(r.a_k), num(r.b_k), num(r.g_k)});
  return out;
}

// ------------------------------------------------------------------ selftest

struct SelftestOpts {
  std::vector<int> criteria;
};

Outcome run_selftest(const SelftestOpts& o, const Common& c) {
  Json config{{"criteria", o.criteria}, {"seed", c.seed}};
  Outcome out{ReportEnvelope("selftest", config), std::nullopt};
  for (const auto& r : acceptance::run_all(o.criteria)) {
    std::cerr << acceptance::format(r) << "\n";
    Json payload{{"id", r.id}, {"limit_s", r.limit}, {"checks_ok", r.checks_ok}, {"detail", r.detail}};
    if (c.timing) payload["seconds"] = r.seconds;
    out.envelope.add_check(std::to_string(r.id) + " " + r.name, r.passed, payload);
  }
  return out;
}

// ------------------------------------------------------------------ output

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string csv_text(const Csv& csv) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(csv.header);
  for (const auto& r : csv.rows) line(r);
  return os.str();
}

void emit(const std::string& command, const Outcome& out, const Common& c, std::optional<double> elapsed_ms) {
  const char* dir_env = std::getenv("DCSHARP_OUTPUT_DIR");
  std::optional<std::filesystem::path> dir;
  if (dir_env && *dir_env) {
    dir = dir_env;
    std::filesystem::create_directories(*dir);
  }
  const std::string json = out.envelope.to_json(elapsed_ms).dump(2) + "\n";
  const bool csv_to_stdout = out.csv && out.csv->primary && c.csv_path.empty() && !dir;

  if (!c.json_path.empty())
    write_text(c.json_path, json);
  else if (dir)
    write_text((*dir / (command + ".json")).string(), json);
  else if (!csv_to_stdout)
    std::cout << json;

  if (out.csv) {
    const std::string text = csv_text(*out.csv);
    if (!c.csv_path.empty())
      write_text(c.csv_path, text);
    else if (dir)
      write_text((*dir / (command + ".csv")).string(), text);
    else if (csv_to_stdout)
      std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Denjoy-Carleman weight sequences, flat constructions and their certificates"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--json", common.json_path, "write the JSON report here");
  app.add_option("--csv", common.csv_path, "write the CSV table here");
  app.add_flag("--timing", common.timing, "add elapsed_ms to the report");
  app.add_option("--seed", common.seed, "seed for sampled sweeps")->capture_default_str();

  AnalyzeOpts analyze;
  auto* a = app.add_subcommand("analyze", "log-convexity, closure, quasianalyticity and phi identity of one family");
  a->add_option("--family", analyze.family)->capture_default_str();
  a->add_option("--K", analyze.K)->capture_default_str()->check(CLI::Range(8ul, 1000000ul));

  CompareOpts cmp;
  auto* cm = app.add_subcommand("compare", "compare C_N against C_M");
  cm->add_option("--N", cmp.N)->capture_default_str();
  cm->add_option("--M", cmp.M)->capture_default_str();
  cm->add_option("--K", cmp.K)->capture_default_str()->check(CLI::Range(2ul, 10000000ul));

  OstrowskiOpts ost;
  auto* os = app.add_subcommand("ostrowski", "phi(r) on a log-spaced grid (CSV r,phi_log,argmax)");
  os->add_option("--family", ost.family)->capture_default_str();
  os->add_option("--r-min", ost.r_min)->capture_default_str();
  os->add_option("--r-max", ost.r_max)->capture_default_str();
  os->add_option("--points", ost.points)->capture_default_str();
  os->add_option("--horizon", ost.horizon)->capture_default_str()->check(CLI::PositiveNumber);

  BoundsOpts bounds;
  auto* vb = app.add_subcommand("verify-bounds", "sweep one of the derivative bounds");
  vb->add_option("--target", bounds.target, "brick | polar-brick | base | block | polar-block")->required();
  vb->add_option("--family", bounds.family)->capture_default_str();
  vb->add_option("--samples", bounds.samples)->check(CLI::PositiveNumber);
  vb->add_option("--max-order", bounds.max_order)->check(CLI::Range(0, 16));
  vb->add_option("--K", bounds.K, "series terms")->check(CLI::PositiveNumber);
  vb->add_option("--q", bounds.q);
  vb->add_option("--m", bounds.m);
  vb->add_option("--rho", bounds.rho);
  vb->add_option("--C", bounds.C, "constant under test (polar targets)");

  FlatOpts flat;
  auto* cf = app.add_subcommand("construct-flat", "build Gamma, its gaps and the lower-bound certificate");
  cf->add_option("--family", flat.family)->capture_default_str();
  cf->add_option("--E", flat.E, "sqrt | power:<a> | table:<path>")->capture_default_str();
  cf->add_option("--lambda-max", flat.lambda_max)->capture_default_str()->check(CLI::Range(2ul, 100000ul));
  cf->add_option("--candidates", flat.candidates, "even candidate indices")->delimiter(',');
  cf->add_option("--lambdas", flat.lambdas, "indices for the lower-bound certificate")->delimiter(',');
  cf->add_flag("--upper", flat.upper, "also sweep the upper bounds of F and G");
  cf->add_option("--samples", flat.samples)->capture_default_str()->check(CLI::PositiveNumber);
  cf->add_option("--max-order", flat.max_order)->capture_default_str()->check(CLI::Range(0, 12));

  CertifyOpts cert;
  auto* ce = app.add_subcommand("certify", "sharpness table (CSV lambda,lhs_log,rhs_log,ratio_root)");
  ce->add_option("--gamma", cert.gamma_path, "JSON from construct-flat")->required();
  ce->add_option("--N", cert.N)->capture_default_str();
  ce->add_option("--lambdas", cert.lambdas)->delimiter(',');
  ce->add_option("--compare-K", cert.compare_K, "horizon for compare(N, shift(M,2)); 0 = automatic")
      ->capture_default_str();

  CounterOpts counter;
  auto* cx = app.add_subcommand("counterexample", "build and verify the slow-growth counterexample");
  cx->add_option("--pairs", counter.pairs)->capture_default_str()->check(CLI::Range(1ul, 64ul));
  cx->add_option("--warmup", counter.warmup)->capture_default_str()->check(CLI::Range(1ul, 1000ul));
  cx->add_option("--K", counter.K)->capture_default_str()->check(CLI::Range(2ul, 10000000ul));

  SelftestOpts self;
  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--criteria", self.criteria, "subset of criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::optional<Outcome> out;
    if (sub == a) out = run_analyze(analyze, common);
    else if (sub == cm) out = run_compare(cmp, common);
    else if (sub == os) out = run_ostrowski(ost, common);
    else if (sub == vb) out = run_bounds(bounds, common);
    else if (sub == cf) out = run_construct(flat, common);
    else if (sub == ce) out = run_certify(cert, common);
    else if (sub == cx) out = run_counterexample(counter, common);
    else out = run_selftest(self, common);
    std::optional<double> elapsed;
    if (common.timing)
      elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(command, *out, common, elapsed);
    return out->envelope.failed() ? 1 : 0;
  } catch (const UsageError& e) {
    std::cerr << "dcsharp " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "dcsharp " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "dcsharp " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    std::cerr << "dcsharp " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const HorizonError& e) {
    std::cerr << "dcsharp " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dcsharp " << command << ": internal error: " << e.what() << "\n";
    return 1;
  }
}
