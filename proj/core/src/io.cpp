#include "hypconvex/io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace hypconvex {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view message) {
  throw ParseError(std::string(field) + ": " + std::string(message));
}

std::string at(std::string_view field, std::size_t i) {
  return std::string(field) + "[" + std::to_string(i) + "]";
}

std::string dot(std::string_view field, std::string_view key) {
  return std::string(field) + "." + std::string(key);
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const Json& j, std::string_view field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

Cplx parse_complex(const Json& j, std::string_view field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected an [re, im] pair");
  return {number(j[0], at(field, 0)), number(j[1], at(field, 1))};
}

const Json& member(const Json& j, std::string_view field, const char* key, const char* missing) {
  if (!j.is_object()) fail(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(field, missing);
  return *it;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

Json tagged(double value, std::string_view method) {
  Json j = {{"method", method}};
  if (std::isfinite(value)) {
    j["value"] = value;
  } else {
    j["value"] = value > 0 ? "inf" : "-inf";
  }
  return j;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(CVector(m.row(r).transpose())));
  return rows;
}

MapExpr::Op op_from_name(std::string_view name, std::string_view field) {
  using Op = MapExpr::Op;
  for (const Op op : {Op::add, Op::sub, Op::mul, Op::div, Op::neg, Op::exp, Op::log, Op::pow}) {
    if (name == to_string(op)) return op;
  }
  fail(field, "unknown operator '" + std::string(name) + "'");
}

}  // namespace

Json to_json(Cplx c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(to_json(v[j]));
  return out;
}

CVector point_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) fail(field, "expected a list of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(j[i], at(field, i));
  return v;
}

CVector parse_point(std::string_view text, std::string_view field) {
  return point_from_json(parse_text(text), field);
}

DomainSpec parse_domain(std::string_view text) { return domain_from_json(parse_text(text)); }

DomainSpec domain_from_json(const Json& j) {
  if (!j.is_object()) fail("domain", "expected a JSON object");
  const Json& dim_j = member(j, "domain", "dim", "dim required");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) fail("dim", "expected a positive integer");
  DomainDraft draft;
  draft.dim = static_cast<std::size_t>(dim_j.get<long long>());

  if (!j.contains("witness")) fail("witness", "witness required");
  draft.witness = point_from_json(j["witness"], "witness");

  if (j.contains("halfspaces")) {
    const Json& hs = j["halfspaces"];
    if (!hs.is_array()) fail("halfspaces", "expected a list");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string field = at("halfspaces", i);
      CVector c = point_from_json(member(hs[i], field, "c", "c required"), dot(field, "c"));
      double a = number(member(hs[i], field, "a", "a required"), dot(field, "a"));
      if (hs[i].contains("sense")) {
        const Json& sense = hs[i]["sense"];
        if (sense == "<") {
          c = -c;
          a = -a;
        } else if (sense != ">") {
          fail(dot(field, "sense"), "expected \">\" or \"<\"");
        }
      }
      draft.halfspaces.emplace_back(std::move(c), a);
    }
  }
  auto violations = validate(draft);
  if (!violations.empty()) {
    std::string msg = violations.front().message;
    for (std::size_t i = 1; i < violations.size(); ++i) {
      msg += "; " + violations[i].field + ": " + violations[i].message;
    }
    fail(violations.front().field, msg);
  }
  return DomainSpec(draft);
}

Json to_json(const DomainSpec& domain) {
  Json hs = Json::array();
  for (const auto& h : domain.halfspaces()) {
    hs.push_back({{"c", to_json(h.functional.coeffs())}, {"a", h.threshold}});
  }
  return {{"dim", domain.dim()}, {"halfspaces", hs}, {"witness", to_json(domain.witness())}};
}

MapExpr parse_expr(const Json& j, std::string_view field) {
  if (!j.is_object()) fail(field, "expected an expression object");
  if (j.contains("c")) return MapExpr::constant(parse_complex(j["c"], dot(field, "c")));
  if (j.contains("var")) {
    const Json& v = j["var"];
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(dot(field, "var"), "expected a non-negative integer");
    return MapExpr::variable(static_cast<std::size_t>(v.get<long long>()));
  }
  const Json& op_j = member(j, field, "op", "expected one of c, var, op");
  if (!op_j.is_string()) fail(dot(field, "op"), "expected a string");
  const auto op = op_from_name(op_j.get<std::string>(), dot(field, "op"));
  const Json& args = member(j, field, "args", "args required");
  if (!args.is_array()) fail(dot(field, "args"), "expected a list");
  const std::string af = dot(field, "args");
  using Op = MapExpr::Op;
  switch (op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
      if (args.size() != 2) fail(af, "expected 2 arguments");
      return MapExpr::binary(op, parse_expr(args[0], at(af, 0)), parse_expr(args[1], at(af, 1)));
    case Op::neg:
    case Op::exp:
    case Op::log:
      if (args.size() != 1) fail(af, "expected 1 argument");
      return MapExpr::unary(op, parse_expr(args[0], at(af, 0)));
    case Op::pow: {
      if (args.size() != 1) fail(af, "expected 1 argument");
      const Json& n = member(j, field, "n", "pow needs an integer exponent n");
      if (!n.is_number_integer()) fail(dot(field, "n"), "expected an integer");
      return MapExpr::power(parse_expr(args[0], at(af, 0)), n.get<int>());
    }
    default: break;
  }
  fail(field, "unsupported operator");
}

Json to_json(const MapExpr& expr) {
  using Op = MapExpr::Op;
  switch (expr.op()) {
    case Op::constant: return {{"c", to_json(expr.value())}};
    case Op::variable: return {{"var", expr.index()}};
    default: break;
  }
  Json args = Json::array();
  for (const auto& a : expr.args()) args.push_back(to_json(a));
  Json out = {{"op", to_string(expr.op())}, {"args", args}};
  if (expr.op() == Op::pow) out["n"] = expr.exponent();
  return out;
}

SelfMap parse_map(std::string_view text) { return map_from_json(parse_text(text)); }

SelfMap map_from_json(const Json& j) {
  if (!j.is_object()) fail("map", "expected a JSON object");
  auto count = [&](const char* key) {
    const Json& v = member(j, "map", key, (std::string(key) + " required").c_str());
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
  };
  const std::size_t k = count("k");
  const std::size_t m = count("m");
  auto exprs = [&](const char* key) {
    std::vector<MapExpr> out;
    if (!j.contains(key)) return out;
    const Json& list = j[key];
    if (!list.is_array()) fail(key, "expected a list of expressions");
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(parse_expr(list[i], at(key, i)));
    return out;
  };
  try {
    return SelfMap(k, m, exprs("phi"), exprs("psi"));
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

Json to_json(const SelfMap& map) {
  Json phi = Json::array(), psi = Json::array();
  for (const auto& e : map.phi()) phi.push_back(to_json(e));
  for (const auto& e : map.psi()) psi.push_back(to_json(e));
  return {{"k", map.k()}, {"m", map.m()}, {"phi", phi}, {"psi", psi}};
}

CommandResult analyze(const DomainSpec& domain, std::uint64_t seed, std::size_t samples) {
  const HyperbolicityReport rep = hyperbolicity_report(domain);
  const auto& dec = rep.decomposition;
  Json out;
  out["tool"] = {{"name", kToolName}, {"version", kToolVersion}, {"seed", seed}};
  out["domain"] = to_json(domain);
  out["verdict"] = {
      {"hyperbolic", rep.hyperbolic},
      {"complete_hyperbolic", rep.hyperbolic},
      {"bergman_admissible", rep.bergman_admissible},
      {"k", dec.k},
      {"m", dec.m},
      {"method", "complex_rank_svd"},
  };
  out["decomposition"] = {
      {"transform", matrix_to_json(dec.transform)},
      {"kernel_basis", matrix_to_json(dec.kernel_basis.transpose())},
      {"condition_number", tagged(dec.condition_number, "svd")},
      {"factor", to_json(dec.factor)},
  };
  Json facets = Json::array();
  for (std::size_t i = 0; i < domain.halfspaces().size(); ++i) {
    const auto f = facet_complex_lines(domain, i);
    facets.push_back({{"index", i}, {"complex_line_dimension", f.dimension}});
  }
  out["facets"] = facets;

  if (rep.line) {
    out["certificate"] = {
        {"kind", "line_witness"},
        {"base", to_json(rep.line->base)},
        {"direction", to_json(rep.line->direction)},
        {"residual", tagged(rep.line->residual, "exact_evaluation")},
    };
  }
  if (rep.frame) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < rep.frame->entries.size(); ++i) {
      const auto& h = rep.frame->entries[i];
      entries.push_back({{"index", rep.frame->indices[i]},
                         {"c", to_json(h.functional.coeffs())},
                         {"a", h.threshold}});
    }
    out["certificate"] = {
        {"kind", "separating_frame"},
        {"entries", entries},
        {"min_singular_value", tagged(rep.frame->min_singular_value, "svd")},
    };
    // Sample points around the witness, shrunk until interior.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const double scale = std::min(1.0, euclid_boundary_dist(domain, domain.witness()));
    Json rows = Json::array();
    for (std::size_t s = 0; s < samples; ++s) {
      CVector z = domain.witness();
      if (s > 0) {
        CVector step(z.size());
        for (Eigen::Index j = 0; j < z.size(); ++j) step[j] = Cplx{gauss(rng), gauss(rng)};
        double t = 4.0 * scale;
        while (!is_interior(domain, z + t * step) && t > 1e-12) t *= 0.5;
        z += t * step;
      }
      const CVector u = rep.realization->apply(z);
      const CVector back = rep.realization->invert(u);
      rows.push_back({{"z", to_json(z)},
                      {"u", to_json(u)},
                      {"max_modulus", tagged(sup_norm(u), "closed_form")},
                      {"roundtrip_error", tagged((back - z).norm() / std::max(1.0, z.norm()),
                                                 "linear_solve")}});
    }
    out["realization_samples"] = rows;
  }
  return {out, rep.hyperbolic ? 0 : 2};
}

Json distance_row(const DomainSpec& domain, const CVector& z, const CVector& w) {
  const auto b = distance_bracket(domain, z, w);
  return {{"z", to_json(z)},
          {"w", to_json(w)},
          {"lower", tagged(b.lower, to_string(b.lower_method))},
          {"upper", tagged(b.upper, to_string(b.upper_method))}};
}

std::string distance_grid_csv(const DomainSpec& domain, const CVector& z, std::size_t axis,
                              double span, std::size_t steps) {
  if (axis >= domain.dim()) throw DomainError("distance grid: axis out of range");
  if (steps < 2) throw DomainError("distance grid: need at least 2 steps");
  std::ostringstream out;
  const auto n = z.size();
  for (Eigen::Index j = 0; j < n; ++j) out << "z" << j << "_re,z" << j << "_im,";
  for (Eigen::Index j = 0; j < n; ++j) out << "w" << j << "_re,w" << j << "_im,";
  out << "lower,upper,lower_method,upper_method\n";
  for (std::size_t a = 0; a < steps; ++a) {
    for (std::size_t b = 0; b < steps; ++b) {
      const double s = -span + 2.0 * span * static_cast<double>(a) / static_cast<double>(steps - 1);
      const double t = -span + 2.0 * span * static_cast<double>(b) / static_cast<double>(steps - 1);
      CVector w = z;
      w[static_cast<Eigen::Index>(axis)] += Cplx{s, t};
      if (!is_interior(domain, w)) continue;
      const auto br = distance_bracket(domain, z, w);
      for (Eigen::Index j = 0; j < n; ++j) out << fmt(z[j].real()) << ',' << fmt(z[j].imag()) << ',';
      for (Eigen::Index j = 0; j < n; ++j) out << fmt(w[j].real()) << ',' << fmt(w[j].imag()) << ',';
      out << fmt(br.lower) << ',' << fmt(br.upper) << ',' << to_string(br.lower_method) << ','
          << to_string(br.upper_method) << '\n';
    }
  }
  return out.str();
}

std::vector<PotentialReport> scan_all_potentials(const DomainSpec& domain, const CVector& base,
                                                 const CVector& direction,
                                                 std::span<const double> radii) {
  const Frame frame = separating_frame(domain);
  std::vector<PotentialReport> out;
  for (const auto kind : {PotentialKind::peak_sum, PotentialKind::peak_max, PotentialKind::antipeak_log}) {
    out.push_back(scan_ray(kind, frame, base, direction, radii));
  }
  return out;
}

std::string peaks_csv(const std::vector<PotentialReport>& reports) {
  std::ostringstream out;
  out << "kind,radius,value,verdict,limit,fitted_rate\n";
  for (const auto& r : reports) {
    const std::string limit = std::isfinite(r.limit) ? fmt(r.limit) : (r.limit > 0 ? "inf" : "-inf");
    for (const auto& s : r.samples) {
      out << to_string(r.kind) << ',' << fmt(s.radius) << ',' << fmt(s.value) << ','
          << to_string(r.verdict) << ',' << limit << ',' << fmt(r.fitted_rate) << '\n';
    }
  }
  return out.str();
}

Json orbit_summary(const OrbitRecord& record) {
  const auto& c = record.classification;
  Json out = {
      {"iterates", record.points.size()},
      {"stop", to_string(record.stop)},
      {"classification", {{"kind", to_string(c.kind)}, {"method", "heuristic"}, {"evidence", c.evidence}}},
      {"first", to_json(record.points.front())},
      {"last", to_json(record.points.back())},
      {"max_norm", tagged(*std::max_element(record.norms.begin(), record.norms.end()), "sup_norm")},
      {"min_slack", tagged(*std::min_element(record.slacks.begin(), record.slacks.end()), "min_slack")},
  };
  if (c.kind == OrbitKind::periodic) out["classification"]["period"] = c.period;
  if (c.limit) out["classification"]["limit"] = to_json(*c.limit);
  if (record.exit_point) out["exit_point"] = to_json(*record.exit_point);
  return out;
}

std::string orbit_trace_csv(const OrbitRecord& record) {
  std::ostringstream out;
  out << "step";
  const auto n = record.points.front().size();
  for (Eigen::Index j = 0; j < n; ++j) out << ",p" << j << "_re,p" << j << "_im";
  out << ",slack,norm\n";
  for (std::size_t i = 0; i < record.points.size(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < n; ++j) {
      out << ',' << fmt(record.points[i][j].real()) << ',' << fmt(record.points[i][j].imag());
    }
    const double slack = record.slacks[i];
    out << ',' << (std::isfinite(slack) ? fmt(slack) : std::string("inf")) << ','
        << fmt(record.norms[i]) << '\n';
  }
  return out.str();
}

std::string exhaustion_csv(const std::vector<ExhaustionPoint>& curve) {
  std::ostringstream out;
  out << "R,lower,method\n";
  for (const auto& p : curve) out << fmt(p.radius) << ',' << fmt(p.lower) << ",caratheodory_halfplane\n";
  return out.str();
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '[') {
    const Json j = parse_text(text);
    if (!j.is_array()) fail("list", "expected an array");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at("list", i)));
    return out;
  }
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail("list", "not a number: '" + item + "'");
    }
  }
  return out;
}

}  // namespace hypconvex
