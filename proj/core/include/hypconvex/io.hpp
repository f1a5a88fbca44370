#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypconvex/dynamics.hpp"
#include "hypconvex/metrics.hpp"
#include "hypconvex/potentials.hpp"

namespace hypconvex {

inline constexpr const char* kToolName = "hypconvex";
inline constexpr const char* kToolVersion = "0.1.0";

// Schema or validation failure; the message names the offending field.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs; points are lists of pairs.
Json to_json(Cplx c);
Json to_json(const CVector& v);
CVector point_from_json(const Json& j, std::string_view field = "point");
CVector parse_point(std::string_view text, std::string_view field = "point");

// {"dim": N, "halfspaces": [{"c": [[re,im]...], "a": real, "sense": ">"|"<"}...],
//  "witness": [[re,im]...]}. "sense" defaults to ">"; "<" is normalized to
// the ">" form by negating c and a.
DomainSpec parse_domain(std::string_view text);
DomainSpec domain_from_json(const Json& j);
Json to_json(const DomainSpec& domain);

// Expression trees: {"c": [re,im]}, {"var": j}, {"op": name, "args": [...]}
// with op in add, sub, mul, div, neg, exp, log, and
// {"op": "pow", "args": [base], "n": int}. Variables are 0-based.
MapExpr parse_expr(const Json& j, std::string_view field = "expr");
Json to_json(const MapExpr& expr);

// {"k": int, "m": int, "phi": [expr...], "psi": [expr...]}
SelfMap parse_map(std::string_view text);
SelfMap map_from_json(const Json& j);
Json to_json(const SelfMap& map);

struct CommandResult {
  Json report;
  int exit_code;
};

// Verdict, decomposition, certificate and realization samples. Exit code 0
// when hyperbolic, 2 otherwise.
CommandResult analyze(const DomainSpec& domain, std::uint64_t seed = 0, std::size_t samples = 8);

Json distance_row(const DomainSpec& domain, const CVector& z, const CVector& w);

// Brackets from z to w = z + (s + i t) e_axis over an (steps x steps) grid of
// s, t in [-span, span]; exterior grid points are skipped.
std::string distance_grid_csv(const DomainSpec& domain, const CVector& z, std::size_t axis,
                              double span, std::size_t steps);

// One row per (potential, radius); columns kind, radius, value, verdict,
// limit, fitted_rate.
std::string peaks_csv(const std::vector<PotentialReport>& reports);
std::vector<PotentialReport> scan_all_potentials(const DomainSpec& domain, const CVector& base,
                                                 const CVector& direction,
                                                 std::span<const double> radii);

Json orbit_summary(const OrbitRecord& record);
std::string orbit_trace_csv(const OrbitRecord& record);

std::string exhaustion_csv(const std::vector<ExhaustionPoint>& curve);

// Parses "1,10,100" or a JSON array of numbers.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace hypconvex
