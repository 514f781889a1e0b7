#include "radialmp/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "radialmp/error.hpp"

namespace radialmp::io {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string str(std::string_view s) { return std::string(s); }

const json& require(const json& j, const char* key, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParameterError(str(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number_or(const json& j, const char* key, double fallback, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return read_number(j.at(key), str(where) + "." + key);
}

int int_or(const json& j, const char* key, int fallback, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ParameterError(str(where) + "." + key + " must be an integer");
  return v.get<int>();
}

bool bool_or(const json& j, const char* key, bool fallback, std::string_view where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ParameterError(str(where) + "." + key + " must be true or false");
  return v.get<bool>();
}

std::string form_of(const json& j, std::string_view where) {
  const json& f = require(j, "form", where);
  if (!f.is_string()) throw ParameterError(str(where) + ".form must be a string");
  return f.get<std::string>();
}

std::vector<PowerTerm> read_terms(const json& j, std::string_view where) {
  const json& terms = require(j, "terms", where);
  if (!terms.is_array() || terms.empty()) throw ParameterError(str(where) + ".terms must be a non-empty array");
  std::vector<PowerTerm> out;
  for (const json& t : terms) {
    PowerTerm p;
    p.c = number_or(t, "c", 1.0, where);
    p.e = read_number(require(t, "e", where), str(where) + ".terms[].e");
    out.push_back(p);
  }
  return out;
}

json terms_json(const std::vector<PowerTerm>& terms) {
  json arr = json::array();
  for (const PowerTerm& t : terms) arr.push_back({{"c", number(t.c)}, {"e", number(t.e)}});
  return arr;
}

json optional_exact(const std::optional<Rational>& r) {
  return r ? json(r->to_string()) : json(nullptr);
}

}  // namespace

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j, std::string_view what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s.find('/') != std::string::npos) {
      if (auto r = Rational::parse(s)) return r->to_double();
    } else {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end != s.c_str() && *end == '\0') return v;
    }
  }
  throw ParameterError(str(what) + " must be a number or a fraction string like \"3/2\"");
}

ExactReal read_exact(const json& j, std::string_view what) {
  if (j.is_number_integer()) return ExactReal(Rational(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (auto r = Rational::parse(s)) return ExactReal(*r);
  }
  return ExactReal(read_number(j, what));
}

json to_json(const Rational& x) {
  if (x.den() == 1) return x.num();
  return x.to_string();
}

json to_json(const ExactReal& x) {
  if (x.exact) return to_json(*x.exact);
  return number(x.value);
}

PotentialSpec potential_from_json(const json& j) {
  constexpr std::string_view where = "potential";
  if (!j.is_object()) throw ParameterError("potential must be a JSON object");
  const std::string form = form_of(j, where);
  std::optional<double> a0, ainf;
  if (j.contains("a0")) a0 = read_number(j.at("a0"), "potential.a0");
  if (j.contains("ainf")) ainf = read_number(j.at("ainf"), "potential.ainf");
  PotentialForm pf;
  if (form == "pure_power") {
    pf = PurePower{number_or(j, "c", 1.0, where), read_number(require(j, "e", where), "potential.e")};
  } else if (form == "constant") {
    pf = PurePower{read_number(require(j, "c", where), "potential.c"), 0.0};
  } else if (form == "zero") {
    pf = PurePower{0.0, 0.0};
  } else if (form == "min_power") {
    pf = MinPower{read_terms(j, where)};
  } else if (form == "max_power") {
    pf = MaxPower{read_terms(j, where)};
  } else if (form == "exp" || form == "exp_scaled") {
    pf = ExpScaled{number_or(j, "c", 1.0, where), read_number(require(j, "k", where), "potential.k")};
  } else if (form == "table" || form == "tabulated") {
    const json& pts = require(j, "points", where);
    if (!pts.is_array()) throw ParameterError("potential.points must be an array of [r, v] pairs");
    Tabulated t;
    for (const json& p : pts) {
      if (!p.is_array() || p.size() != 2) throw ParameterError("potential.points entries must be [r, v]");
      t.points.emplace_back(read_number(p[0], "potential.points[].r"), read_number(p[1], "potential.points[].v"));
    }
    t.extrapolate = bool_or(j, "extrapolate", false, where);
    pf = std::move(t);
  } else {
    throw ParameterError("unknown potential form '" + form + "'");
  }
  return PotentialSpec(std::move(pf), a0, ainf);
}

json to_json(const PotentialSpec& spec) {
  json j = std::visit(
      Overloaded{
          [&](const PurePower& p) -> json {
            if (p.c == 0.0) return {{"form", "zero"}};
            return {{"form", "pure_power"}, {"c", number(p.c)}, {"e", number(p.e)}};
          },
          [](const MinPower& p) -> json { return {{"form", "min_power"}, {"terms", terms_json(p.terms)}}; },
          [](const MaxPower& p) -> json { return {{"form", "max_power"}, {"terms", terms_json(p.terms)}}; },
          [](const ExpScaled& p) -> json { return {{"form", "exp"}, {"c", number(p.c)}, {"k", number(p.k)}}; },
          [](const Tabulated& t) -> json {
            json pts = json::array();
            for (const auto& [r, v] : t.points) pts.push_back({number(r), number(v)});
            return {{"form", "table"}, {"points", pts}, {"extrapolate", t.extrapolate}};
          },
      },
      spec.form());
  if (spec.declared_a0()) j["a0"] = number(*spec.declared_a0());
  if (spec.declared_ainf()) j["ainf"] = number(*spec.declared_ainf());
  return j;
}

Nonlinearity nonlinearity_from_json(const json& j) {
  constexpr std::string_view where = "f";
  if (!j.is_object()) throw ParameterError("f must be a JSON object");
  const std::string form = form_of(j, where);
  if (form == "min_power" || form == "min_power_odd") {
    const double q1 = read_number(require(j, "q1", where), "f.q1");
    const double q2 = read_number(require(j, "q2", where), "f.q2");
    return form == "min_power" ? Nonlinearity::min_power(q1, q2) : Nonlinearity::min_power_odd(q1, q2);
  }
  if (form == "pure_power") return Nonlinearity::pure_power(read_number(require(j, "q", where), "f.q"));
  if (form == "zero") return Nonlinearity::zero();
  throw ParameterError("unknown nonlinearity form '" + form + "' (custom forms are API-only)");
}

json to_json(const Nonlinearity& nl) {
  switch (nl.kind()) {
    case NonlinearityKind::MinPower:
    case NonlinearityKind::MinPowerOdd:
      return {{"form", to_string(nl.kind())}, {"q1", number(nl.q1())}, {"q2", number(nl.q2())}};
    case NonlinearityKind::PurePower:
      return {{"form", "pure_power"}, {"q", number(nl.q1())}};
    case NonlinearityKind::Custom:
      return {{"form", "custom"}};
    case NonlinearityKind::Zero:
      return {{"form", "zero"}};
  }
  return nullptr;
}

GridParams grid_from_json(const json& j) {
  constexpr std::string_view where = "grid";
  GridParams g;
  if (j.is_null()) return g;
  if (!j.is_object()) throw ParameterError("grid must be a JSON object");
  g.r_min = number_or(j, "r_min", g.r_min, where);
  g.r_max = number_or(j, "r_max", g.r_max, where);
  g.nodes = int_or(j, "nodes", g.nodes, where);
  if (j.contains("grading")) g.grading = grading_from_string(j.at("grading").get<std::string>());
  g.switch_radius = number_or(j, "switch_radius", g.switch_radius, where);
  g.inner_fraction = number_or(j, "inner_fraction", g.inner_fraction, where);
  if (!(g.r_min > 0.0 && g.r_max > g.r_min && std::isfinite(g.r_max))) {
    throw ParameterError("grid needs 0 < r_min < r_max < inf");
  }
  if (g.nodes < 3) throw ParameterError("grid needs at least 3 nodes");
  if (!(g.inner_fraction > 0.0 && g.inner_fraction < 1.0)) {
    throw ParameterError("grid inner_fraction must lie in (0, 1)");
  }
  return g;
}

json to_json(const GridParams& g) {
  json j{{"r_min", number(g.r_min)}, {"r_max", number(g.r_max)}, {"nodes", g.nodes},
         {"grading", to_string(g.grading)}};
  if (g.grading == Grading::TwoZone) {
    j["switch_radius"] = number(g.switch_radius);
    j["inner_fraction"] = number(g.inner_fraction);
  }
  return j;
}

SolverOptions solver_from_json(const json& j) {
  constexpr std::string_view where = "solver";
  SolverOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw ParameterError("solver must be a JSON object");
  o.max_iter = int_or(j, "max_iter", o.max_iter, where);
  o.residual_tol = number_or(j, "residual_tol", o.residual_tol, where);
  o.shrink = number_or(j, "shrink", o.shrink, where);
  o.sufficient_decrease = number_or(j, "sufficient_decrease", o.sufficient_decrease, where);
  o.max_backtracks = int_or(j, "max_backtracks", o.max_backtracks, where);
  o.restarts = int_or(j, "restarts", o.restarts, where);
  o.newton_polish = bool_or(j, "newton_polish", o.newton_polish, where);
  o.newton_switch = number_or(j, "newton_switch", o.newton_switch, where);
  o.newton_max_iter = int_or(j, "newton_max_iter", o.newton_max_iter, where);
  o.clamp_tolerance = number_or(j, "clamp_tolerance", o.clamp_tolerance, where);
  o.geometry_samples = int_or(j, "geometry_samples", o.geometry_samples, where);
  if (!(o.residual_tol > 0.0) || !(o.shrink > 0.0 && o.shrink < 1.0) ||
      !(o.sufficient_decrease > 0.0 && o.sufficient_decrease < 1.0) || o.max_iter < 1 ||
      o.restarts < 1 || o.max_backtracks < 1 || o.geometry_samples < 1) {
    throw ParameterError("solver block: tolerances must be positive, shrink and sufficient_decrease in (0,1), counts >= 1");
  }
  return o;
}

json to_json(const SolverOptions& o) {
  return {{"max_iter", o.max_iter},
          {"residual_tol", number(o.residual_tol)},
          {"shrink", number(o.shrink)},
          {"sufficient_decrease", number(o.sufficient_decrease)},
          {"max_backtracks", o.max_backtracks},
          {"restarts", o.restarts},
          {"newton_polish", o.newton_polish},
          {"newton_switch", number(o.newton_switch)},
          {"newton_max_iter", o.newton_max_iter},
          {"clamp_tolerance", number(o.clamp_tolerance)},
          {"geometry_samples", o.geometry_samples}};
}

ProbeOptions probe_options_from_json(const json& j) {
  constexpr std::string_view where = "probe";
  ProbeOptions o;
  if (j.is_null()) return o;
  o.restarts = int_or(j, "restarts", o.restarts, where);
  o.max_iter = int_or(j, "max_iter", o.max_iter, where);
  o.tolerance = number_or(j, "tolerance", o.tolerance, where);
  if (o.restarts < 0 || o.max_iter < 1 || !(o.tolerance > 0.0)) {
    throw ParameterError("probe block: restarts >= 0, max_iter >= 1, tolerance > 0");
  }
  return o;
}

json to_json(const ProbeOptions& o) {
  return {{"restarts", o.restarts}, {"max_iter", o.max_iter}, {"tolerance", number(o.tolerance)}};
}

json to_json(const Interval& iv) {
  return {{"lo", number(iv.lo)},
          {"hi", number(iv.hi)},
          {"empty", iv.empty},
          {"lo_exact", optional_exact(iv.lo_exact)},
          {"hi_exact", optional_exact(iv.hi_exact)},
          {"text", iv.to_string()}};
}

json to_json(const AdmissibleIntervals& iv) {
  return {{"I1", to_json(iv.I1)}, {"I2", to_json(iv.I2)}, {"overlap", to_json(iv.overlap)}};
}

json to_json(const ExponentReport& r) {
  json exact = json::object();
  for (const auto& [k, v] : r.exact) exact[k] = v.to_string();
  return {{"N", r.N},
          {"p0", number(r.p0)},
          {"pinf", number(r.pinf)},
          {"pstar", number(r.pstar)},
          {"a", number(r.a)},
          {"sigma", number(r.sigma)},
          {"s", number(r.s)},
          {"qtilde", number(r.qtilde)},
          {"alphastar0", number(r.alphastar0)},
          {"alphastarinf", number(r.alphastarinf)},
          {"qstar0", number(r.qstar0)},
          {"qstarinf", number(r.qstarinf)},
          {"nu0", number(r.nu0)},
          {"nuinf", number(r.nuinf)},
          {"intervals", to_json(r.intervals)},
          {"exact_mode", r.exact_mode},
          {"exact", exact}};
}

json to_json(const HypothesisReport& r) {
  return {{"passed", r.passed},
          {"a0_est", number(r.a0_est)},
          {"ainf_est", number(r.ainf_est)},
          {"a0_exact", optional_exact(r.a0_exact)},
          {"ainf_exact", optional_exact(r.ainf_exact)},
          {"liminf0", number(r.liminf0)},
          {"limsup0", number(r.limsup0)},
          {"liminf_inf", number(r.liminf_inf)},
          {"limsup_inf", number(r.limsup_inf)},
          {"s_required", number(r.s_required)},
          {"s_used", number(r.s_used)},
          {"messages", r.messages}};
}

json to_json(const FHypothesisReport& r) {
  return {{"passed", r.passed},
          {"f1", r.f1},
          {"f2", r.f2},
          {"f3", r.f3},
          {"f4", r.f4},
          {"M", number(r.M)},
          {"theta", number(r.theta)},
          {"m", number(r.m)},
          {"t0", r.t0 ? number(*r.t0) : json(nullptr)},
          {"oddness_checked", r.oddness_checked},
          {"witness", r.witness ? number(*r.witness) : json(nullptr)},
          {"messages", r.messages}};
}

json to_json(const RatioBound& r) {
  return {{"lambda", number(r.lambda)},
          {"infinite", r.infinite},
          {"argmax", number(r.argmax)},
          {"message", r.message}};
}

json to_json(const EnergyBreakdown& e) {
  return {{"quadratic", number(e.quadratic)}, {"potential", number(e.potential)}, {"total", number(e.total)}};
}

json to_json(const DecayCheck& d) {
  return {{"max_ratio", number(d.max_ratio)},
          {"C_bound", number(d.C_bound)},
          {"exponent", number(d.exponent)},
          {"C_potential", number(d.C_potential)},
          {"passed", d.passed}};
}

json to_json(const SolveResult& r) {
  json restarts = json::array();
  for (const RestartSummary& s : r.restarts) {
    restarts.push_back({{"seed", s.seed},
                        {"energy", number(s.energy)},
                        {"residual", number(s.residual)},
                        {"iterations", s.iterations},
                        {"converged", s.converged},
                        {"status", s.status}});
  }
  return {{"converged", r.converged},
          {"energy", to_json(r.energy)},
          {"residual", number(r.residual)},
          {"nehari_defect", number(r.nehari_defect)},
          {"norm_X", number(r.norm_X)},
          {"max_u", number(r.u.size() ? r.u.max_abs() : 0.0)},
          {"min_before_clamp", number(r.min_before_clamp)},
          {"iterations", r.iterations},
          {"newton_iterations", r.newton_iterations},
          {"geometry",
           {{"rho", number(r.geometry.rho)},
            {"alpha_mp", number(r.geometry.alpha_mp)},
            {"escape_lambda", number(r.geometry.escape_lambda)},
            {"escape_energy", number(r.geometry.escape_energy)}}},
          {"restarts", restarts},
          {"warnings", r.warnings}};
}

json to_json(const ProbeResult& r) {
  json est = json::array(), radii = json::array(), conv = json::array();
  for (double v : r.estimates) est.push_back(number(v));
  for (double v : r.radii) radii.push_back(number(v));
  for (bool b : r.converged_flags) conv.push_back(b);
  return {{"end", to_string(r.end)},
          {"q", number(r.q)},
          {"radii", radii},
          {"estimates", est},
          {"converged", conv},
          {"fitted_slope", number(r.fitted_slope)},
          {"predicted_delta", number(r.predicted_delta)},
          {"q_admissible", r.q_admissible},
          {"restarts_used", r.restarts_used}};
}

json to_json(const GeometryReport& r) {
  json rows = json::array();
  for (const GeometryRow& row : r.rows) {
    rows.push_back({{"rho", number(row.rho)},
                    {"min_energy", number(row.min_energy)},
                    {"floor_model", number(row.floor_model)}});
  }
  return {{"passed", r.passed},
          {"positive_floor", r.positive_floor},
          {"best_rho", r.best_rho ? number(*r.best_rho) : json(nullptr)},
          {"c3", number(r.c3)},
          {"c4", number(r.c4)},
          {"rows", rows},
          {"escape",
           {{"lambda", number(r.escape.lambda)},
            {"energy", number(r.escape.energy)},
            {"norm_X", number(r.escape.norm_X)},
            {"delta", number(r.escape.delta)},
            {"negative", r.escape_negative},
            {"beyond_rho", r.escape_beyond_rho}}},
          {"messages", r.messages}};
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TextPosition position_of(std::string_view text, std::size_t byte_offset) {
  TextPosition p;
  const std::size_t end = std::min(byte_offset, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

}  // namespace radialmp::io
