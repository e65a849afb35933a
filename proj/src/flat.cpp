#include "dcsharp/flat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dcsharp/diagnostics.hpp"
#include "dcsharp/errors.hpp"
#include "dcsharp/log_magnitude.hpp"
#include "dcsharp/ostrowski.hpp"

namespace dcsharp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x == 0 ? kNegInf : std::log(std::abs(x)); }
double safe_log(const Rational& x) { return x == 0 ? kNegInf : log_abs(x); }

double log_factorial(Multiindex a) { return std::lgamma(a.first + 1.0) + std::lgamma(a.second + 1.0); }

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Rational two_pow(std::size_t n) {
  Integer z = 1;
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), n);
  return Rational(z);
}

Rational max0(const Rational& x) { return x < 0 ? Rational(0) : x; }

}  // namespace

// ---------------------------------------------------------------- E

EFunction EFunction::sqrt() { return EFunction{}; }

EFunction EFunction::power(double a) {
  if (!(a > 0 && a < 1)) throw UsageError("E power exponent must lie in (0, 1), got " + shortest(a));
  EFunction e;
  e.kind_ = a == 0.5 ? Kind::sqrt : Kind::power;
  e.exponent_ = a;
  return e;
}

EFunction EFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw ValidationError("E table needs at least two points");
  if (points.front().first != 0 || points.front().second != 0)
    throw ValidationError("E table must start at (0, 0)");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first) || !(points[i].second > points[i - 1].second))
      throw ValidationError("E table must be strictly increasing (row " + std::to_string(i) + ")");
  }
  if (!(points.back().second < 1)) throw ValidationError("E table values must stay below 1");
  EFunction e;
  e.kind_ = Kind::table;
  e.table_ = std::move(points);
  return e;
}

EFunction EFunction::parse(std::string_view spec) {
  if (spec == "sqrt") return sqrt();
  if (spec.starts_with("power:")) {
    const std::string arg(spec.substr(6));
    double a = 0;
    auto res = std::from_chars(arg.data(), arg.data() + arg.size(), a);
    if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size())
      throw UsageError("bad E spec '" + std::string(spec) + "'");
    return power(a);
  }
  if (spec.starts_with("table:")) {
    const std::string path(spec.substr(6));
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open E table '" + path + "'");
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream row(line);
      double r = 0, v = 0;
      if (!(row >> r >> v)) throw ValidationError("E table '" + path + "': unreadable line '" + line + "'");
      pts.emplace_back(r, v);
    }
    auto e = table(std::move(pts));
    e.source_ = path;
    return e;
  }
  throw UsageError("unknown E spec '" + std::string(spec) + "' (expected sqrt, power:<a>, table:<path>)");
}

std::string EFunction::spec() const {
  switch (kind_) {
    case Kind::sqrt: return "sqrt";
    case Kind::power: return "power:" + shortest(exponent_);
    case Kind::table: return "table:" + source_;
  }
  return "sqrt";
}

double EFunction::eval(double r) const {
  if (!(r >= 0)) throw DomainError("E: negative argument");
  if (kind_ != Kind::table) return std::pow(r, exponent_);
  if (r > table_.back().first) throw DomainError("E: argument beyond table range");
  auto it = std::upper_bound(table_.begin(), table_.end(), r,
                             [](double x, const auto& p) { return x < p.first; });
  if (it == table_.end()) return table_.back().second;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return a.second + (b.second - a.second) * (r - a.first) / (b.first - a.first);
}

double EFunction::eval_log(double log_r) const {
  if (kind_ != Kind::table) return exponent_ * log_r;
  const auto& p1 = table_[1];
  const double r = std::exp(log_r);
  if (r < p1.first) return std::log(p1.second / p1.first) + log_r;
  return std::log(eval(r));
}

RationalInterval EFunction::enclose(const Rational& r) const {
  if (r < 0) throw DomainError("E: negative argument");
  switch (kind_) {
    case Kind::sqrt: return sqrt_enclosure(r);
    case Kind::power: {
      const double v = std::pow(r.get_d(), exponent_);
      if (!(v > 0)) throw DomainError("E: power underflow");
      return {to_rational(v * (1 - 1e-13)), to_rational(v * (1 + 1e-13))};
    }
    case Kind::table: {
      if (r > to_rational(table_.back().first)) throw DomainError("E: argument beyond table range");
      std::size_t i = 1;
      while (i + 1 < table_.size() && to_rational(table_[i].first) < r) ++i;
      const Rational r0 = to_rational(table_[i - 1].first), r1 = to_rational(table_[i].first);
      const Rational e0 = to_rational(table_[i - 1].second), e1 = to_rational(table_[i].second);
      Rational v = e0 + (e1 - e0) * (r - r0) / (r1 - r0);
      v.canonicalize();
      return RationalInterval::point(v);
    }
  }
  return sqrt_enclosure(r);
}

// ---------------------------------------------------------------- Gamma

std::vector<std::size_t> GammaData::lambdas() const {
  std::vector<std::size_t> out;
  for (const auto& e : entries) out.push_back(e.lambda);
  return out;
}

std::size_t GammaData::index_of(std::size_t lambda) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].lambda == lambda) return i;
  throw UsageError("lambda = " + std::to_string(lambda) + " is not in Lambda");
}

std::size_t GammaData::next_lambda() const { return lambda_max % 2 ? lambda_max + 1 : lambda_max + 2; }

namespace {

GammaEntry make_entry(const WeightSequence& M, const EFunction& E, std::size_t lambda) {
  GammaEntry e;
  e.lambda = lambda;
  e.log_rho = -M.log_ratio(lambda);
  e.rho = std::exp(e.log_rho);
  e.E = E.eval(e.rho);
  e.q = e.E / e.rho;
  const auto ph = phi_log(M, -e.log_rho);
  e.log_weight = -static_cast<double>(lambda) * std::numbers::ln2 - ph.value.log_abs();
  if (M.has_exact()) {
    Rational rho = 1 / M.exact_ratio(lambda);
    rho.canonicalize();
    e.rho_exact = rho;
    e.E_enclosure = E.enclose(rho);
    Rational w = 1 / (two_pow(lambda) * phi_exact(M, M.exact_ratio(lambda)).value);
    w.canonicalize();
    e.weight_exact = w;
  } else {
    e.E_enclosure = {to_rational(e.E), to_rational(e.E)};
  }
  return e;
}

bool q_above_one(const GammaEntry& e) {
  if (e.rho_exact) return e.E_enclosure.lo > *e.rho_exact;
  return e.q > 1;
}

// New entry sits below half the previous one.
bool sparse_after(const GammaEntry& prev, const GammaEntry& next) {
  if (prev.rho_exact) return 2 * next.E_enclosure.hi < prev.E_enclosure.lo;
  return 2 * next.E < prev.E;
}

bool E_below_one(const GammaEntry& e) {
  if (e.rho_exact) return e.E_enclosure.hi < 1;
  return e.E < 1;
}

void check_degenerate(const WeightSequence& M, std::size_t lambda_max) {
  if (auto mx = M.max_index(); mx && lambda_max + 2 > *mx)
    throw UsageError("lambda_max = " + std::to_string(lambda_max) + " exceeds the table of '" + M.spec() + "'");
  if (!(M.log_ratio(lambda_max) > 0) || !(M.log_ratio(lambda_max) > M.log_ratio(0)))
    throw ConstructionError("'" + M.spec() + "' does not properly contain the analytic class: rho_n = M_n/M_{n+1}" +
                            " does not decrease below 1 by n = " + std::to_string(lambda_max));
}

void finish(GammaData& G) {
  if (G.entries.size() < 2)
    throw ConstructionError("fewer than two indices in Lambda up to " + std::to_string(G.lambda_max) +
                            "; raise lambda_max");
  auto& es = G.entries;
  for (std::size_t i = 0; i < es.size(); ++i) {
    double d = std::numeric_limits<double>::infinity();
    if (i > 0) d = std::min(d, es[i - 1].E - es[i].E);
    if (i + 1 < es.size()) d = std::min(d, es[i].E - es[i + 1].E);
    es[i].delta = d;
    es[i].interior = i > 0 && i + 1 < es.size();
  }
  double eps = 1;
  for (const auto& e : es) eps = std::min(eps, std::exp(2 * e.log_rho / static_cast<double>(e.lambda)));
  eps *= 1 - 1e-12;
  if (G.exact()) {
    for (int tries = 0;; ++tries) {
      const Rational cand = to_rational(eps);
      bool ok = true;
      for (const auto& e : es)
        if (*e.rho_exact * *e.rho_exact < pow(cand, e.lambda)) ok = false;
      if (ok) break;
      if (tries > 20) throw ConstructionError("could not certify epsilon");
      eps *= 1 - 1e-9;
    }
  }
  G.epsilon = eps;
  G.epsilon_lower = to_rational(eps);
  G.B = std::pow(8.0, 5) / eps;
}

}  // namespace

GammaData build_gamma(const WeightSequence& M, const EFunction& E, std::size_t lambda_max,
                      std::optional<std::vector<std::size_t>> candidates) {
  check_degenerate(M, lambda_max);
  std::vector<std::size_t> cands;
  if (candidates) {
    cands = *candidates;
    for (auto c : cands) {
      if (c == 0 || c % 2) throw UsageError("candidates must be positive even integers, got " + std::to_string(c));
      if (c > lambda_max) throw UsageError("candidate " + std::to_string(c) + " exceeds lambda_max");
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  } else {
    for (std::size_t l = 2; l <= lambda_max; l += 2) cands.push_back(l);
  }
  GammaData G{M, E, lambda_max, {}, 0, 0, 0};
  for (auto l : cands) {
    if (!(M.log_ratio(l) > 0)) continue;
    auto e = make_entry(M, E, l);
    if (!q_above_one(e) || !E_below_one(e)) continue;
    if (!G.entries.empty() && !sparse_after(G.entries.back(), e)) continue;
    G.entries.push_back(std::move(e));
  }
  finish(G);
  return G;
}

GammaData gamma_from_lambdas(const WeightSequence& M, const EFunction& E, const std::vector<std::size_t>& lambdas,
                             std::size_t lambda_max) {
  check_degenerate(M, lambda_max);
  GammaData G{M, E, lambda_max, {}, 0, 0, 0};
  for (auto l : lambdas) {
    if (l == 0 || l % 2) throw ConstructionError("Lambda entries must be positive and even, got " + std::to_string(l));
    if (l > lambda_max) throw ConstructionError("Lambda entry " + std::to_string(l) + " exceeds lambda_max");
    if (!G.entries.empty() && l <= G.entries.back().lambda)
      throw ConstructionError("Lambda must be strictly increasing");
    auto e = make_entry(M, E, l);
    if (!q_above_one(e)) throw ConstructionError("q_lambda <= 1 at lambda = " + std::to_string(l));
    if (!E_below_one(e)) throw ConstructionError("E(rho_lambda) >= 1 at lambda = " + std::to_string(l));
    if (!G.entries.empty() && !sparse_after(G.entries.back(), e))
      throw ConstructionError("sparsity E(rho_a) > 2 E(rho_b) fails at lambda = " + std::to_string(l));
    G.entries.push_back(std::move(e));
  }
  finish(G);
  return G;
}

// ---------------------------------------------------------------- gaps

namespace {

// dist(E_i, E_j) enclosure for i != j (entries are sorted with E decreasing).
RationalInterval distance(const GammaEntry& a, const GammaEntry& b) {
  if (a.lambda < b.lambda) return a.E_enclosure - b.E_enclosure;
  return b.E_enclosure - a.E_enclosure;
}

std::optional<RationalInterval> delta_enclosure(const GammaData& G, std::size_t i) {
  if (!G.exact()) return std::nullopt;
  std::optional<RationalInterval> out;
  for (std::size_t j : {i - 1, i + 1}) {
    if (j >= G.entries.size()) continue;
    auto d = distance(G.entries[i], G.entries[j]);
    if (!out) {
      out = d;
    } else {
      out->lo = std::min(out->lo, d.lo);
      out->hi = std::min(out->hi, d.hi);
    }
  }
  return out;
}

bool hypothesis_holds(const GammaData& G, const GammaEntry& e) {
  const double rhs_log = std::log(G.B) - G.M.log_weight(e.lambda) / static_cast<double>(e.lambda);
  return std::log(e.delta) >= rhs_log;
}

}  // namespace

DeltaReport delta_gaps(const GammaData& G) {
  DeltaReport out;
  const double logB = std::log(G.B);
  for (std::size_t i = 0; i < G.entries.size(); ++i) {
    const auto& e = G.entries[i];
    DeltaEntry d;
    d.lambda = e.lambda;
    d.delta = e.delta;
    d.half_E = e.E / 2;
    d.interior = e.interior;
    if (e.interior) {
      if (auto enc = delta_enclosure(G, i))
        d.gap_ok = 2 * enc->lo >= e.E_enclosure.hi;
      else
        d.gap_ok = e.delta >= e.E / 2;
    }
    d.hypothesis_rhs = std::exp(logB - G.M.log_weight(e.lambda) / static_cast<double>(e.lambda));
    d.hypothesis_ok = hypothesis_holds(G, e);
    out.gaps_ok = out.gaps_ok && d.gap_ok;
    out.entries.push_back(d);
  }
  for (std::size_t i = out.entries.size(); i-- > 0;) {
    if (!out.entries[i].hypothesis_ok) break;
    out.lambda0_in_range = out.entries[i].lambda;
  }

  // Step-I bound delta >= E(rho)/2 projected past the stored range.
  auto holds = [&](double lambda) {
    const auto n = static_cast<std::size_t>(lambda);
    if (auto mx = G.M.max_index(); mx && n + 1 > *mx) return false;
    const double lhs = G.E.eval_log(-G.M.log_ratio(n)) - std::numbers::ln2;
    return lhs >= logB - G.M.log_weight(n) / lambda;
  };
  double hi = 2;
  while (hi < 0x1p52 && !holds(hi)) hi *= 2;
  if (hi < 0x1p52) {
    double lo = hi / 2;  // even, fails (or is below 2)
    if (hi == 2) {
      out.projected_lambda0 = 2;
    } else {
      while (hi - lo > 2) {
        double mid = std::floor((lo + hi) / 4) * 2;
        if (mid <= lo) mid = lo + 2;
        if (holds(mid))
          hi = mid;
        else
          lo = mid;
      }
      out.projected_lambda0 = hi;
    }
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

bool negligible(const GammaEntry& e) { return e.log_weight < -600; }

// 64 8^{|a|+1} a! M_{a2} M_{|a|} (4/3) 2^{-lambda} summed over lambda >= from.
double crude_tail_log(const WeightSequence& M, Multiindex a, std::size_t from) {
  return std::log(64.0) + (a.order() + 1) * std::log(8.0) + log_factorial(a) +
         M.log_weight(static_cast<std::size_t>(a.second)) + M.log_weight(static_cast<std::size_t>(a.order())) +
         std::log(4.0 / 3.0) - static_cast<double>(from) * std::numbers::ln2;
}

}  // namespace

SeriesValueWithTail F_eval(const GammaData& G, const BaseFunctionTruncation& h, std::array<double, 2> x) {
  SeriesValueWithTail out;
  double tail_log = crude_tail_log(G.M, {0, 0}, G.next_lambda());
  for (const auto& e : G.entries) {
    if (negligible(e)) {
      tail_log = log_sum_exp(tail_log, crude_tail_log(G.M, {0, 0}, e.lambda) - std::log(4.0 / 3.0));
      continue;
    }
    const double w = std::exp(e.log_weight);
    const auto v = h_eval(h, {x[0] / e.rho - e.q, x[1] / e.rho});
    out.value += w * v.value;
    out.tail_bound += w * v.tail_bound;
  }
  out.tail_bound += std::exp(tail_log);
  return out;
}

SeriesValueWithTail G_eval(const GammaData& G, const BaseFunctionTruncation& h, double r, double theta) {
  return F_eval(G, h, {r * std::cos(theta), r * std::sin(theta)});
}

FloatJet F_jet(const GammaData& G, const BaseFunctionTruncation& h, std::array<double, 2> x, int degree) {
  FloatJet acc(x, degree);
  for (const auto& e : G.entries) {
    if (negligible(e)) continue;
    acc += block_jet(BlockParams{e.q, e.rho}, h, x, degree) * std::exp(e.log_weight);
  }
  return acc;
}

FloatJet G_jet(const GammaData& G, const BaseFunctionTruncation& h, double r, double theta, int degree) {
  FloatJet acc({r, theta}, degree);
  for (const auto& e : G.entries) {
    if (negligible(e)) continue;
    acc += polar_block_jet(BlockParams{e.q, e.rho}, h, r, theta, degree) * std::exp(e.log_weight);
  }
  return acc;
}

// ---------------------------------------------------------------- axis enclosure

std::size_t flat_terms(int max_order) {
  return std::max<std::size_t>(60, 4 * static_cast<std::size_t>(std::max(max_order, 0)) + 16);
}

AxisEnclosure F_axis_x2_derivative(const GammaData& G, const BaseFunctionTruncation& h, std::size_t lambda,
                                   unsigned order) {
  if (order % 2) throw UsageError("F_axis_x2_derivative: order must be even, got " + std::to_string(order));
  if (!G.exact() || !h.exact())
    throw UsageError("F_axis_x2_derivative: '" + G.M.spec() + "' has no exact values");
  const std::size_t idx = G.index_of(lambda);
  const auto& c = G.entries[idx];
  const unsigned k = order / 2;

  const Rational nfact = factorial(order);
  const Rational base = nfact * axis_moment_exact(h, k);
  const Rational M_n = G.M.exact_weight(order);
  const Rational tail_base = nfact * M_n / two_pow(h.K);

  AxisEnclosure out;
  out.lambda = lambda;
  out.order = order;
  out.sign = k % 2 ? -1 : 1;
  out.cross = RationalInterval::point(Rational(0));
  for (std::size_t j = 0; j < G.entries.size(); ++j) {
    const auto& e = G.entries[j];
    const Rational factor = *e.weight_exact / pow(*e.rho_exact, order);
    if (j == idx) {
      const Rational T = factor * base, t = factor * tail_base;
      out.dominant = {max0(T - t), T + t};
      continue;
    }
    const auto d = scale(c.E_enclosure - e.E_enclosure, 1 / *e.rho_exact);
    auto A = square(d);
    A.lo += 1;
    A.hi += 1;
    const auto P = pow_positive(reciprocal(A), k + 1);
    const auto term = scale(P, factor * base);
    const Rational t = factor * tail_base * P.hi;
    out.cross = out.cross + RationalInterval{max0(term.lo - t), term.hi + t};
  }

  // Blocks past lambda_max: centres below E_last/2, rho' <= rho_next, weight <= 2^-lambda'/phi(1/rho_next).
  const std::size_t ln = G.next_lambda();
  const Rational D = c.E_enclosure.lo - G.entries.back().E_enclosure.hi / 2;
  if (D <= 0) throw ConstructionError("F_axis_x2_derivative: centre not separated from the tail");
  const Rational m_next = G.M.exact_ratio(ln);
  const Rational phi_next = phi_exact(G.M, m_next).value;
  out.dropped_tail = 64 * pow(Rational(8), order + 1) * nfact * M_n / (m_next * m_next) / pow(D, order + 2) *
                     Rational(4, 3) / two_pow(ln) / phi_next;
  out.dropped_tail.canonicalize();

  out.magnitude = out.dominant + out.cross;
  out.magnitude.hi += out.dropped_tail;
  out.magnitude.lo.canonicalize();
  out.magnitude.hi.canonicalize();
  return out;
}

AxisLogEnclosure F_axis_x2_derivative_log(const GammaData& G, const BaseFunctionTruncation& h, std::size_t lambda,
                                          unsigned order) {
  if (order % 2) throw UsageError("F_axis_x2_derivative_log: order must be even, got " + std::to_string(order));
  const std::size_t idx = G.index_of(lambda);
  const auto& c = G.entries[idx];
  const unsigned k = order / 2;
  const double log_nfact = std::lgamma(order + 1.0);
  const double log_base = log_nfact + axis_moment(h, k).log_abs();
  const double log_Mn = G.M.log_weight(order);
  const double log_tail = log_nfact + log_Mn - static_cast<double>(h.K) * std::numbers::ln2;

  LogMagnitude lower, upper;
  AxisLogEnclosure out;
  out.lambda = lambda;
  out.order = order;
  for (std::size_t j = 0; j < G.entries.size(); ++j) {
    const auto& e = G.entries[j];
    double log_factor = e.log_weight - order * e.log_rho;
    if (j != idx) {
      const double d = (c.E - e.E) / e.rho;
      log_factor -= (k + 1.0) * std::log1p(d * d);
    }
    const auto T = LogMagnitude::from_log(log_factor + log_base);
    const auto t = LogMagnitude::from_log(log_factor + log_tail);
    if (j == idx) out.dominant_log = (T - t).log_abs();
    if (T > t) lower += T - t;
    upper += T + t;
  }
  const std::size_t ln = G.next_lambda();
  const double D = c.E - G.entries.back().E / 2;
  const double log_dropped = std::log(64.0) + (order + 1.0) * std::log(8.0) + log_nfact + log_Mn -
                             2 * G.M.log_ratio(ln) - (order + 2.0) * std::log(D) + std::log(4.0 / 3.0) -
                             static_cast<double>(ln) * std::numbers::ln2 -
                             phi_log(G.M, G.M.log_ratio(ln)).value.log_abs();
  upper += LogMagnitude::from_log(log_dropped);
  out.lower_log = lower.log_abs();
  out.upper_log = upper.log_abs();
  return out;
}

// ---------------------------------------------------------------- certificates

bool LowerBoundCertificate::passed() const {
  if (entries.empty()) return false;
  for (const auto& e : entries)
    if (!e.pass || !e.dominant_ok || !e.bracket_ok) return false;
  return true;
}

LowerBoundCertificate lower_bound_certificate(const GammaData& G, const BaseFunctionTruncation& h,
                                              const std::vector<std::size_t>& lambdas) {
  if (!G.exact() || !h.exact())
    throw UsageError("lower_bound_certificate: '" + G.M.spec() + "' has no exact values");
  LowerBoundCertificate cert;
  cert.terms = h.K;
  for (auto lambda : lambdas) {
    const std::size_t idx = G.index_of(lambda);
    const auto& e = G.entries[idx];
    const auto enc = F_axis_x2_derivative(G, h, lambda, static_cast<unsigned>(lambda));
    const Rational lf = factorial(lambda);
    const Rational M = G.M.exact_weight(lambda);
    const Rational& rho = *e.rho_exact;
    const Rational rhs = pow(G.epsilon_lower, lambda) * lf * M * M / two_pow(2 * lambda);

    LowerBoundEntry row;
    row.lambda = lambda;
    row.lhs_log = safe_log(enc.magnitude.lo);
    row.rhs_log = log_abs(rhs);
    row.pass = enc.magnitude.lo >= rhs;

    const Rational phi = phi_exact(G.M, 1 / rho).value;
    const Rational unweighted = lf * rho * rho * M * M / two_pow(lambda);
    row.dominant_identity = lf * M / (pow(2 * rho, lambda) * phi) == unweighted;
    const Rational weighted = unweighted / two_pow(lambda);
    row.dominant_log = safe_log(enc.dominant.lo);
    row.dominant_bound_log = log_abs(weighted);
    row.dominant_ok = enc.dominant.lo >= weighted;
    row.unweighted_bound_log = log_abs(unweighted);
    row.unweighted_bound_ok = enc.dominant.lo >= unweighted;

    const auto delta = delta_enclosure(G, idx);
    const Rational cross_bound = lf * M * pow(Rational(8), lambda + 3) / pow(delta->hi, lambda);
    const Rational cross_total = enc.cross.hi + enc.dropped_tail;
    row.cross_log = safe_log(cross_total);
    row.cross_bound_log = log_abs(cross_bound);
    row.bracket_ok = cross_total <= cross_bound;
    row.hypothesis_ok = hypothesis_holds(G, e);
    cert.entries.push_back(row);
  }
  return cert;
}

std::vector<std::array<double, 2>> flat_samples(std::size_t n, std::uint64_t seed) {
  std::vector<std::array<double, 2>> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
  const double lo = std::log(1e-3), hi = std::log(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    out.push_back({std::exp(lo + t * (hi - lo)), theta(rng)});
  }
  return out;
}

namespace {

std::string sample_label(std::size_t i) { return "sample " + std::to_string(i); }

}  // namespace

BoundReport upper_bound_sweep(const GammaData& G, const BaseFunctionTruncation& h,
                              const std::vector<std::array<double, 2>>& samples, int max_order) {
  BoundReport report;
  report.name = "flat";
  report.inequality = "|d^a F| <= 8^(|a|+3) a! M_|a|^2";
  report.max_order = max_order;
  report.constant = 8;
  report.empirical_label = "smallest b with |d^a F| <= b^(|a|+3) a! M_|a|^2 on the sample";
  report.notes.push_back("K = " + std::to_string(h.K) + " series terms per block; Lambda up to " +
                         std::to_string(G.lambda_max));
  const double log8 = std::log(8.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = samples[i][0], th = samples[i][1];
    const std::array<double, 2> x{r * std::cos(th), r * std::sin(th)};
    const auto jet = F_jet(G, h, x, max_order);
    report.begin_sample(sample_label(i), x);
    for (auto alpha : multiindices_up_to(max_order)) {
      const double a = alpha.order();
      double tail = crude_tail_log(G.M, alpha, G.next_lambda());
      for (const auto& e : G.entries) {
        if (negligible(e)) {
          tail = log_sum_exp(tail, crude_tail_log(G.M, alpha, e.lambda) - std::log(4.0 / 3.0));
          continue;
        }
        tail = log_sum_exp(tail, e.log_weight - a * e.log_rho + derivative_tail_bound_log(h, alpha));
      }
      const double partial = safe_log(jet.derivative(alpha));
      const double lhs = log_sum_exp(partial, tail);
      const double scale = log_factorial(alpha) + 2 * G.M.log_weight(static_cast<std::size_t>(alpha.order()));
      const double rhs = (a + 3) * log8 + scale;
      report.record(alpha, lhs, rhs, lhs <= rhs);
      if (std::isfinite(partial)) report.observe_constant(std::exp((partial - scale) / (a + 3)));
    }
  }
  return report;
}

BoundReport polar_upper_bound_sweep(const GammaData& G, const BaseFunctionTruncation& h,
                                    const std::vector<std::array<double, 2>>& samples, int max_order, double C,
                                    double brick_C) {
  if (!(C > 0) || !(brick_C > 0)) throw UsageError("polar_upper_bound_sweep: constants must be positive");
  const bool normalized = G.M.log_weight(0) == 0.0 && G.M.log_weight(1) == 0.0;
  if (!normalized)
    throw UsageError("polar_upper_bound_sweep: precondition M_0 = M_1 = 1 fails for '" + G.M.spec() + "'");
  BoundReport report;
  report.name = "polar-flat";
  report.inequality = "|d^a G| <= (2C)^(|a|+1) a! M_|a|, G = F(r cos t, r sin t)";
  report.max_order = max_order;
  report.constant = 2 * C;
  report.empirical_label = "smallest 2C sufficient on the sample";
  report.notes.push_back("block series tails bounded with brick constant " + shortest(brick_C));
  const double log2C = std::log(2 * C), logC = std::log(C), logCb = std::log(brick_C);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = samples[i][0], th = samples[i][1];
    const auto jet = G_jet(G, h, r, th, max_order);
    report.begin_sample(sample_label(i), {r, th});
    for (auto alpha : multiindices_up_to(max_order)) {
      const double a = alpha.order();
      const double scale = log_factorial(alpha) + G.M.log_weight(static_cast<std::size_t>(alpha.order()));
      double tail = (a + 1) * logC + alpha.second * std::numbers::ln2 + scale + std::log(4.0 / 3.0) -
                    static_cast<double>(G.next_lambda()) * std::numbers::ln2;
      for (const auto& e : G.entries) {
        const double shift = alpha.second * std::log1p(e.E);
        if (negligible(e)) {
          tail = log_sum_exp(tail, (a + 1) * logC + shift + scale - static_cast<double>(e.lambda) * std::numbers::ln2);
          continue;
        }
        tail = log_sum_exp(tail, e.log_weight + (a + 1) * logCb + shift + scale -
                                     static_cast<double>(h.K) * std::numbers::ln2);
      }
      const double partial = safe_log(jet.derivative(alpha));
      const double lhs = log_sum_exp(partial, tail);
      const double rhs = (a + 1) * log2C + scale;
      report.record(alpha, lhs, rhs, lhs <= rhs);
      if (std::isfinite(partial)) report.observe_constant(std::exp((partial - scale) / (a + 1)));
    }
  }
  return report;
}

bool SharpnessCertificate::passed() const {
  if (rows.empty()) return false;
  return hypothesis == "strict" ? increasing : bounded;
}

SharpnessCertificate sharpness_certificate(const GammaData& G, const BaseFunctionTruncation& h,
                                           const WeightSequence& N, const std::vector<std::size_t>& lambdas,
                                           std::size_t compare_K) {
  if (lambdas.empty()) throw UsageError("sharpness_certificate: no lambda requested");
  const std::size_t top = *std::max_element(lambdas.begin(), lambdas.end());
  if (compare_K == 0) compare_K = std::max<std::size_t>(200, 2 * top);
  SharpnessCertificate cert;
  cert.N_spec = N.spec();
  cert.compare_K = compare_K;
  const auto cmp = compare(N, G.M.shift(2), compare_K);
  cert.verdict = to_string(cmp.verdict);
  switch (cmp.verdict) {
    case ComparisonVerdict::strictly_contained_diagnostic: cert.hypothesis = "strict"; break;
    case ComparisonVerdict::contained: cert.hypothesis = "bounded"; break;
    default:
      throw UsageError("sharpness_certificate: compare('" + N.spec() + "', shift(M,2)) is " + cert.verdict +
                       "; N must lie below M^(2) for the table to mean anything");
  }
  const double log8 = std::log(8.0);
  for (auto lambda : lambdas) {
    G.index_of(lambda);
    const double l = static_cast<double>(lambda);
    SharpnessRow row;
    row.lambda = lambda;
    if (G.exact() && h.exact()) {
      const auto enc = F_axis_x2_derivative(G, h, lambda, static_cast<unsigned>(lambda));
      row.lhs_log = safe_log(enc.magnitude.lo);
      row.lhs_upper_log = safe_log(enc.magnitude.hi);
    } else {
      const auto enc = F_axis_x2_derivative_log(G, h, lambda, static_cast<unsigned>(lambda));
      row.lhs_log = enc.lower_log;
      row.lhs_upper_log = enc.upper_log;
    }
    const double lf = std::lgamma(l + 1);
    row.rhs_log = lf + N.log_weight(lambda);
    row.ratio_root = std::exp((row.lhs_log - row.rhs_log) / l);
    row.main_constant = std::exp((row.lhs_log - lf - G.M.log_weight(2 * lambda)) / l);
    row.implied_bound = std::exp(((l + 3) * log8 + 2 * G.M.log_weight(lambda) - N.log_weight(lambda)) / l);
    cert.rows.push_back(row);
  }
  cert.increasing = cert.rows.size() >= 2;
  cert.bounded = true;
  for (std::size_t i = 0; i < cert.rows.size(); ++i) {
    const auto& r = cert.rows[i];
    if (i > 0 && !(r.ratio_root > cert.rows[i - 1].ratio_root)) cert.increasing = false;
    cert.fitted_constant = std::max(cert.fitted_constant, r.ratio_root);
    cert.bound_constant = std::max(cert.bound_constant, r.implied_bound);
    const double upper_root = std::exp((r.lhs_upper_log - r.rhs_log) / static_cast<double>(r.lambda));
    if (!(upper_root <= r.implied_bound)) cert.bounded = false;
  }
  return cert;
}

}  // namespace dcsharp
