#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radialmp/exponents.hpp"
#include "radialmp/functional.hpp"
#include "radialmp/grid.hpp"
#include "radialmp/io.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/probes.hpp"
#include "radialmp/solver.hpp"

namespace radialmp::cli {

/// Malformed config text; carries the 1-based position of the failure.
class ConfigSyntaxError : public std::runtime_error {
 public:
  ConfigSyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Ratio-bound exponents (alpha, beta) at both ends. a0/ainf default to the
/// values fitted from A; s defaults to the value used by the [K] check.
struct ExponentsBlock {
  ExactReal alpha0, alphainf;
  ExactReal beta0, betainf;
  std::optional<ExactReal> a0, ainf, s;
  double R1 = 1.0;
  double R2 = 1.0;
};

struct ProbeBlock {
  ProbeEnd end = ProbeEnd::Zero;
  std::optional<double> q;
  std::vector<double> radii;
  ProbeOptions options;
};

struct EstimatesBlock {
  int trials = 200;
  double R_zero = 1.0;
  double R_inf = 1.0;
  double slack = 0.05;
};

struct ProblemConfig {
  int N = 3;
  PotentialSpec A, V, K;
  std::optional<Nonlinearity> f;
  GridParams grid;
  SolverOptions solver;
  std::optional<ExponentsBlock> exponents;
  ProbeBlock probe;
  EstimatesBlock estimates;
  std::uint64_t seed = 0;
};

/// Parses and validates a config. Throws ConfigSyntaxError for malformed
/// JSON and ParameterError for invalid content.
ProblemConfig parse_config(const std::string& text);
ProblemConfig config_from_json(const io::json& j);
/// Canonical form: parse_config(dump(to_json(c))) reproduces c.
io::json to_json(const ProblemConfig& c);

/// "lo:hi:count" (log-spaced) or a comma-separated list.
std::vector<double> parse_radii(const std::string& text);

/// Problem parameters: the exponents block completed by the fitted
/// asymptotics of A. Throws ParameterError if the block is missing.
ProblemParams problem_params(const ProblemConfig& c);

SolveConfig solve_config(const ProblemConfig& c);

/// Built-in configurations of the three worked examples (1, 2, 3).
ProblemConfig example_config(int which, int N);
int example_default_N(int which);

}  // namespace radialmp::cli
