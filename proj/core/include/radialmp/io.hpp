#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "radialmp/exponents.hpp"
#include "radialmp/functional.hpp"
#include "radialmp/grid.hpp"
#include "radialmp/potential.hpp"
#include "radialmp/probes.hpp"
#include "radialmp/solver.hpp"
#include "radialmp/spaces.hpp"

namespace radialmp::io {

using nlohmann::json;

/// Finite doubles become JSON numbers; infinities and NaN become the strings
/// "inf", "-inf" and "nan" (JSON has no literal for them).
json number(double v);

/// Reads a number given as a JSON number or a string ("1e-3", "3/2", "inf").
double read_number(const json& j, std::string_view what);
ExactReal read_exact(const json& j, std::string_view what);
json to_json(const ExactReal& x);
json to_json(const Rational& x);

PotentialSpec potential_from_json(const json& j);
json to_json(const PotentialSpec& spec);

/// Built-in forms only: min_power, min_power_odd, pure_power, zero.
Nonlinearity nonlinearity_from_json(const json& j);
json to_json(const Nonlinearity& nl);

GridParams grid_from_json(const json& j);
json to_json(const GridParams& g);

SolverOptions solver_from_json(const json& j);
json to_json(const SolverOptions& o);

ProbeOptions probe_options_from_json(const json& j);
json to_json(const ProbeOptions& o);

json to_json(const Interval& iv);
json to_json(const AdmissibleIntervals& iv);
json to_json(const ExponentReport& r);
json to_json(const HypothesisReport& r);
json to_json(const FHypothesisReport& r);
json to_json(const RatioBound& r);
json to_json(const EnergyBreakdown& e);
json to_json(const DecayCheck& d);
/// All SolveResult fields except the nodal values (written as CSV).
json to_json(const SolveResult& r);
json to_json(const ProbeResult& r);
json to_json(const GeometryReport& r);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Line and column (1-based) of a byte offset in a text.
struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};
TextPosition position_of(std::string_view text, std::size_t byte_offset);

}  // namespace radialmp::io
