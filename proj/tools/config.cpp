#include "config.hpp"

#include <cmath>
#include <sstream>

#include "radialmp/error.hpp"

namespace radialmp::cli {
namespace {

using io::json;

const std::vector<std::string> kTopLevelKeys = {"N",      "A",         "V",     "K",         "f",
                                                "grid",   "solver",    "probe", "estimates", "seed",
                                                "exponents"};

void reject_unknown_keys(const json& j, const std::vector<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool found = false;
    for (const std::string& k : known) found = found || k == it.key();
    if (!found) throw ParameterError(where + ": unknown field '" + it.key() + "'");
  }
}

json exact_json(const ExactReal& x) { return io::to_json(x); }

ExponentsBlock exponents_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("exponents must be a JSON object");
  reject_unknown_keys(j, {"alpha0", "alphainf", "beta0", "betainf", "a0", "ainf", "s", "R1", "R2"},
                      "exponents");
  ExponentsBlock b;
  auto get = [&](const char* key) -> ExactReal {
    if (!j.contains(key)) throw ParameterError(std::string("exponents: missing field '") + key + "'");
    return io::read_exact(j.at(key), std::string("exponents.") + key);
  };
  b.alpha0 = get("alpha0");
  b.alphainf = get("alphainf");
  b.beta0 = j.contains("beta0") ? get("beta0") : ExactReal(0);
  b.betainf = j.contains("betainf") ? get("betainf") : ExactReal(0);
  if (j.contains("a0")) b.a0 = get("a0");
  if (j.contains("ainf")) b.ainf = get("ainf");
  if (j.contains("s")) b.s = get("s");
  if (j.contains("R1")) b.R1 = io::read_number(j.at("R1"), "exponents.R1");
  if (j.contains("R2")) b.R2 = io::read_number(j.at("R2"), "exponents.R2");
  for (const ExactReal* beta : {&b.beta0, &b.betainf}) {
    if (beta->value < 0.0 || beta->value > 1.0) throw ParameterError("exponents: beta must lie in [0, 1]");
  }
  if (!(b.R1 > 0.0) || !(b.R2 > 0.0)) throw ParameterError("exponents: R1 and R2 must be positive");
  return b;
}

json exponents_to_json(const ExponentsBlock& b) {
  json j{{"alpha0", exact_json(b.alpha0)},
         {"alphainf", exact_json(b.alphainf)},
         {"beta0", exact_json(b.beta0)},
         {"betainf", exact_json(b.betainf)},
         {"R1", io::number(b.R1)},
         {"R2", io::number(b.R2)}};
  if (b.a0) j["a0"] = exact_json(*b.a0);
  if (b.ainf) j["ainf"] = exact_json(*b.ainf);
  if (b.s) j["s"] = exact_json(*b.s);
  return j;
}

ProbeBlock probe_from_json(const json& j) {
  ProbeBlock p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw ParameterError("probe must be a JSON object");
  reject_unknown_keys(j, {"end", "q", "radii", "restarts", "max_iter", "tolerance"}, "probe");
  if (j.contains("end")) {
    if (!j.at("end").is_string()) throw ParameterError("probe.end must be \"zero\" or \"infinity\"");
    p.end = probe_end_from_string(j.at("end").get<std::string>());
  }
  if (j.contains("q")) p.q = io::read_number(j.at("q"), "probe.q");
  if (j.contains("radii")) {
    const json& r = j.at("radii");
    if (r.is_string()) {
      p.radii = parse_radii(r.get<std::string>());
    } else if (r.is_array()) {
      for (const json& v : r) p.radii.push_back(io::read_number(v, "probe.radii[]"));
    } else {
      throw ParameterError("probe.radii must be \"lo:hi:count\" or an array");
    }
  }
  p.options = io::probe_options_from_json(j);
  return p;
}

json probe_to_json(const ProbeBlock& p) {
  json j = io::to_json(p.options);
  j["end"] = to_string(p.end);
  if (p.q) j["q"] = io::number(*p.q);
  json radii = json::array();
  for (double r : p.radii) radii.push_back(io::number(r));
  j["radii"] = radii;
  return j;
}

EstimatesBlock estimates_from_json(const json& j) {
  EstimatesBlock e;
  if (j.is_null()) return e;
  if (!j.is_object()) throw ParameterError("estimates must be a JSON object");
  reject_unknown_keys(j, {"trials", "R_zero", "R_inf", "slack"}, "estimates");
  if (j.contains("trials")) {
    if (!j.at("trials").is_number_integer()) throw ParameterError("estimates.trials must be an integer");
    e.trials = j.at("trials").get<int>();
  }
  if (j.contains("R_zero")) e.R_zero = io::read_number(j.at("R_zero"), "estimates.R_zero");
  if (j.contains("R_inf")) e.R_inf = io::read_number(j.at("R_inf"), "estimates.R_inf");
  if (j.contains("slack")) e.slack = io::read_number(j.at("slack"), "estimates.slack");
  if (e.trials < 1 || !(e.R_zero > 0.0) || !(e.R_inf > 0.0) || !(e.slack >= 0.0)) {
    throw ParameterError("estimates: trials >= 1, radii > 0, slack >= 0");
  }
  return e;
}

json estimates_to_json(const EstimatesBlock& e) {
  return {{"trials", e.trials},
          {"R_zero", io::number(e.R_zero)},
          {"R_inf", io::number(e.R_inf)},
          {"slack", io::number(e.slack)}};
}

PotentialSpec potential_field(const json& j, const char* key, PotentialRole role) {
  if (!j.contains(key)) throw ParameterError(std::string("config: missing potential '") + key + "'");
  try {
    PotentialSpec spec = io::potential_from_json(j.at(key));
    spec.validate(role);
    return spec;
  } catch (const ParameterError& e) {
    throw ParameterError(std::string(key) + ": " + e.what());
  }
}

ExactReal fitted_or_declared(const HypothesisReport& rep, AsymptoticEnd end) {
  if (end == AsymptoticEnd::Zero) {
    if (rep.a0_exact) return ExactReal(*rep.a0_exact);
    return ExactReal(rep.a0_est);
  }
  if (rep.ainf_exact) return ExactReal(*rep.ainf_exact);
  return ExactReal(rep.ainf_est);
}

}  // namespace

std::vector<double> parse_radii(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ParameterError("radii: '" + s + "' is not a number");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ParameterError("radii must look like lo:hi:count");
    const double count = to_double(parts[2]);
    if (count != std::floor(count)) throw ParameterError("radii count must be an integer");
    return log_spaced(to_double(parts[0]), to_double(parts[1]), static_cast<int>(count));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(to_double(part));
  return out;
}

ProblemConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  reject_unknown_keys(j, kTopLevelKeys, "config");
  ProblemConfig c;
  if (!j.contains("N") || !j.at("N").is_number_integer()) throw ParameterError("config: N must be an integer");
  c.N = j.at("N").get<int>();
  if (c.N < 3) throw ParameterError("config: N must be at least 3");
  c.A = potential_field(j, "A", PotentialRole::A);
  c.V = potential_field(j, "V", PotentialRole::V);
  c.K = potential_field(j, "K", PotentialRole::K);
  if (j.contains("f")) c.f = io::nonlinearity_from_json(j.at("f"));
  c.grid = io::grid_from_json(j.value("grid", json()));
  if (c.grid.nodes < 3 || !(c.grid.r_min > 0.0) || !(c.grid.r_max > c.grid.r_min)) {
    throw ParameterError("grid: need nodes >= 3 and 0 < r_min < r_max");
  }
  c.solver = io::solver_from_json(j.value("solver", json()));
  if (j.contains("exponents")) c.exponents = exponents_from_json(j.at("exponents"));
  c.probe = probe_from_json(j.value("probe", json()));
  c.estimates = estimates_from_json(j.value("estimates", json()));
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ParameterError("config: seed must be a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  return c;
}

ProblemConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const io::TextPosition pos = io::position_of(text, offset);
    throw ConfigSyntaxError(e.what(), pos.line, pos.column);
  }
  return config_from_json(j);
}

json to_json(const ProblemConfig& c) {
  json j{{"N", c.N},
         {"A", io::to_json(c.A)},
         {"V", io::to_json(c.V)},
         {"K", io::to_json(c.K)},
         {"grid", io::to_json(c.grid)},
         {"solver", io::to_json(c.solver)},
         {"probe", probe_to_json(c.probe)},
         {"estimates", estimates_to_json(c.estimates)},
         {"seed", c.seed}};
  if (c.f) j["f"] = io::to_json(*c.f);
  if (c.exponents) j["exponents"] = exponents_to_json(*c.exponents);
  return j;
}

ProblemParams problem_params(const ProblemConfig& c) {
  if (!c.exponents) throw ParameterError("config has no 'exponents' block (alpha0, alphainf, beta0, betainf)");
  const ExponentsBlock& b = *c.exponents;
  ProblemParams p;
  p.N = c.N;
  p.alpha0 = b.alpha0;
  p.alphainf = b.alphainf;
  p.beta0 = b.beta0;
  p.betainf = b.betainf;
  p.s = b.s;
  if (b.a0 && b.ainf) {
    p.a0 = *b.a0;
    p.ainf = *b.ainf;
  } else {
    const HypothesisReport rep = check_hypothesis_A(c.A, c.N);
    if (!rep.passed) {
      std::string msg = "cannot take a0/ainf from A:";
      for (const std::string& m : rep.messages) msg += " " + m;
      throw ParameterError(msg);
    }
    p.a0 = b.a0 ? *b.a0 : fitted_or_declared(rep, AsymptoticEnd::Zero);
    p.ainf = b.ainf ? *b.ainf : fitted_or_declared(rep, AsymptoticEnd::Infinity);
  }
  p.validate();
  return p;
}

SolveConfig solve_config(const ProblemConfig& c) {
  if (!c.f) throw ParameterError("config has no nonlinearity block 'f'");
  SolveConfig s;
  s.N = c.N;
  s.grid = c.grid;
  s.A = c.A;
  s.V = c.V;
  s.K = c.K;
  s.nl = *c.f;
  s.solver = c.solver;
  s.solver.seed = c.seed;
  if (c.exponents) s.exponents = problem_params(c);
  return s;
}

int example_default_N(int which) { return which == 1 ? 3 : 6; }

ProblemConfig example_config(int which, int N) {
  ProblemConfig c;
  c.N = N;
  ExponentsBlock b;
  switch (which) {
    case 1:
      c.A = PotentialSpec::min_power({1, 2}, {1, 1.5});
      c.V = PotentialSpec::min_power({1, 0}, {1, -0.5});
      c.K = PotentialSpec::max_power({1, 0.5}, {1, 1.5});
      c.f = Nonlinearity::min_power(2.2, 4);
      b.alpha0 = Rational(1, 2);
      b.alphainf = Rational(3, 2);
      b.beta0 = 0;
      b.betainf = 0;
      c.probe.end = ProbeEnd::Zero;
      c.probe.q = 2.2;
      c.probe.radii = log_spaced(1e-3, 1e-1, 8);
      c.grid.r_min = 1e-6;
      break;
    case 2:
      c.A = PotentialSpec::max_power({1, -2}, {1, -3});
      c.V = PotentialSpec::pure_power(1, -4);
      c.K = PotentialSpec::min_power({1, 0}, {1, -2});
      c.f = Nonlinearity::pure_power(5);
      b.alpha0 = 0;
      b.alphainf = -2;
      b.beta0 = 0;
      b.betainf = 0;
      c.probe.end = ProbeEnd::Zero;
      c.probe.q = 8;
      c.probe.radii = log_spaced(1e-3, 1e-1, 8);
      break;
    case 3:
      c.A = PotentialSpec::max_power({1, -2}, {1, -3});
      c.V = PotentialSpec::exp_scaled(1, 2);
      c.K = PotentialSpec::exp_scaled(1, 1);
      c.f = Nonlinearity::pure_power(5);
      b.alpha0 = 0;
      b.alphainf = 0;
      b.beta0 = 0;
      b.betainf = Rational(1, 2);
      c.probe.end = ProbeEnd::Zero;
      c.probe.q = 8;
      c.probe.radii = log_spaced(1e-3, 1e-1, 8);
      // e^{2r} overflows double precision beyond r ~ 350; 30 keeps the
      // stiffness ratios moderate.
      c.grid.r_max = 30;
      break;
    default:
      throw ParameterError("examples are numbered 1 to 3");
  }
  c.exponents = b;
  return c;
}

}  // namespace radialmp::cli
