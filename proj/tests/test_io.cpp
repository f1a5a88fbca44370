#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hypconvex/io.hpp"
#include "test_support.hpp"

using namespace hypconvex;
using namespace hypconvex::testing;

namespace {
const Cplx I{0.0, 1.0};

const char* kHalfplane = R"({"dim":1,"halfspaces":[{"c":[[1,0]],"a":0}],"witness":[[1,0]]})";
const char* kQuadrant = R"({"dim":2,"halfspaces":[{"c":[[1,0],[0,0]],"a":0},{"c":[[0,0],[1,0]],"a":0}],
                            "witness":[[1,0],[1,0]]})";
const char* kStrip = R"({"dim":2,"halfspaces":[{"c":[[1,0],[1,0]],"a":0},
                         {"c":[[1,0],[1,0]],"a":4,"sense":"<"}],"witness":[[1,0],[0,0]]})";

std::string error_of(const std::string& text) {
  try {
    parse_domain(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}
}  // namespace

TEST_CASE("parse_domain") {
  const auto d = parse_domain(kHalfplane);
  CHECK(d.dim() == 1);
  CHECK(d.halfspaces().size() == 1);
  CHECK(is_interior(d, point({0.5})));

  // "<" is normalized to the ">" form.
  const auto s = parse_domain(kStrip);
  CHECK(s.halfspaces()[1].threshold == -4.0);
  CHECK(s.halfspaces()[1].functional.coeffs()[0] == Cplx{-1.0, 0.0});
  CHECK(is_interior(s, point({3.0, 0.5})));
  CHECK_FALSE(is_interior(s, point({3.0, 1.5})));

  CHECK(error_of(R"({"dim":1,"halfspaces":[]})").find("witness required") != std::string::npos);
  CHECK(error_of(R"({"dim":1,"halfspaces":[{"c":[[1,0]],"a":0}],"witness":[[0,3]]})").find("witness slack") !=
        std::string::npos);
  CHECK(error_of(R"({"dim":1,"halfspaces":[{"c":[[1,0]],"a":0}],"witness":[[1,0],[1,0]]})")
            .find("witness") != std::string::npos);
  CHECK(error_of(R"({"dim":2,"halfspaces":[{"c":[[1,0],[1]],"a":0}],"witness":[[1,0],[1,0]]})")
            .find("halfspaces[0].c[1]") != std::string::npos);
  CHECK(error_of(R"({"dim":1,"halfspaces":[{"c":[[1,0]]}],"witness":[[1,0]]})").find("halfspaces[0]: a required") !=
        std::string::npos);
  CHECK(error_of(R"({"dim":1,"halfspaces":[{"c":[[0,0]],"a":0}],"witness":[[1,0]]})").find("zero functional") !=
        std::string::npos);
  CHECK(error_of(R"({"dim":1,"halfspaces":[{"c":[[1,0]],"a":0,"sense":"="}],"witness":[[1,0]]})")
            .find("sense") != std::string::npos);
  CHECK(error_of("{not json").find("malformed JSON") != std::string::npos);
  CHECK(error_of(R"({"dim":0,"witness":[]})").find("dim") != std::string::npos);
}

TEST_CASE("domain round trip preserves membership") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto d = planted_rank_domain(rng, n, n + 1, n);
    const auto back = parse_domain(to_json(d).dump());
    for (int s = 0; s < 200; ++s) {
      const CVector z = d.witness() + random_cvector(rng, n, 3.0);
      CHECK(is_interior(d, z) == is_interior(back, z));
    }
  }
}

TEST_CASE("map parsing") {
  const auto f = parse_map(R"({"k":1,"m":1,
      "phi":[{"var":0}],
      "psi":[{"op":"add","args":[{"op":"exp","args":[{"var":1}]},{"var":1}]}]})");
  CHECK(f.k() == 1);
  CHECK(f.m() == 1);
  const CVector p = point({1.0, exp_translation_period_two_point()});
  CHECK(sup_norm(f(f(p)) - p) <= 1e-9);

  const auto g = parse_map(to_json(f).dump());
  CHECK(sup_norm(g(p) - f(p)) == 0.0);

  const auto h = parse_map(R"({"k":1,"m":0,"phi":[{"op":"pow","args":[{"var":0}],"n":2}],"psi":[]})");
  CHECK(h(point({3.0}))[0] == Cplx{9.0, 0.0});

  CHECK_THROWS_AS(parse_map(R"({"k":1,"m":1,"phi":[{"var":1}],"psi":[{"var":1}]})"), ParseError);
  CHECK_THROWS_AS(parse_map(R"({"k":1,"m":0,"phi":[{"op":"sin","args":[{"var":0}]}]})"), ParseError);
  CHECK_THROWS_AS(parse_map(R"({"k":1,"m":0,"phi":[{"op":"add","args":[{"var":0}]}]})"), ParseError);
  CHECK_THROWS_AS(parse_map(R"({"m":0,"phi":[]})"), ParseError);
}

TEST_CASE("analyze command") {
  auto r = analyze(parse_domain(kQuadrant));
  CHECK(r.exit_code == 0);
  CHECK(r.report["verdict"]["hyperbolic"] == true);
  CHECK(r.report["verdict"]["k"] == 2);
  CHECK(r.report["certificate"]["kind"] == "separating_frame");
  for (const auto& row : r.report["realization_samples"]) {
    CHECK(row["max_modulus"]["value"].get<double>() <= 1.0);
    CHECK(row["roundtrip_error"]["value"].get<double>() <= 1e-10);
  }

  r = analyze(parse_domain(R"({"dim":1,"halfspaces":[],"witness":[[0,0]]})"));
  CHECK(r.exit_code == 2);
  CHECK(r.report["verdict"]["hyperbolic"] == false);
  CHECK(r.report["certificate"]["kind"] == "line_witness");
  const auto dir = point_from_json(r.report["certificate"]["direction"]);
  CHECK(std::abs(dir[0]) == doctest::Approx(1.0));

  r = analyze(parse_domain(kStrip));
  CHECK(r.exit_code == 2);
  CHECK(r.report["verdict"]["k"] == 1);
  CHECK(r.report["verdict"]["m"] == 1);

  // Deterministic given the seed.
  CHECK(analyze(parse_domain(kQuadrant), 3).report == analyze(parse_domain(kQuadrant), 3).report);
}

TEST_CASE("distance output") {
  const auto d = parse_domain(kHalfplane);
  const auto row = distance_row(d, point({1.0}), point({3.0}));
  CHECK(row["lower"]["value"].get<double>() == doctest::Approx(0.549306144334055));
  CHECK(row["upper"]["value"].get<double>() == doctest::Approx(0.549306144334055));
  CHECK(row["lower"]["method"] == "caratheodory_halfplane");
  CHECK_THROWS_AS(distance_row(d, point({-1.0}), point({3.0})), DomainError);

  const std::string csv = distance_grid_csv(d, point({2.0}), 0, 1.0, 5);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "z0_re,z0_im,w0_re,w0_im,lower,upper,lower_method,upper_method");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);
}

TEST_CASE("peaks and exhaustion tables") {
  const auto d = parse_domain(kQuadrant);
  const auto radii = log_radii(1, 6);
  const auto reports = scan_all_potentials(d, d.witness(), point({0.0, I}), radii);
  REQUIRE(reports.size() == 3);
  CHECK(reports[1].verdict == LimitVerdict::limit_zero);
  const std::string csv = peaks_csv(reports);
  CHECK(csv.rfind("kind,radius,value,verdict,limit,fitted_rate\n", 0) == 0);
  CHECK(csv.find("antipeak_log,1000000,") != std::string::npos);
  CHECK(csv.find("limit_minus_infinity,-inf") != std::string::npos);

  const auto curve = exhaustion_curve(parse_domain(kHalfplane), point({1.0}), point({3.0}),
                                      std::vector<double>{10.0, 100.0});
  CHECK(exhaustion_csv(curve).rfind("R,lower,method\n10,", 0) == 0);
}

TEST_CASE("orbit outputs") {
  const auto d = parse_domain(R"({"dim":2,"halfspaces":[{"c":[[1,0],[0,0]],"a":0}],"witness":[[1,0],[0,0]]})");
  OrbitRecord rec = iterate(exp_translation_map(1, 1), point({1.0, exp_translation_period_two_point()}), 16, d);
  rec.classification = classify_orbit(rec, d);
  const auto j = orbit_summary(rec);
  CHECK(j["classification"]["kind"] == "periodic");
  CHECK(j["classification"]["period"] == 2);
  CHECK(j["classification"]["method"] == "heuristic");
  const std::string csv = orbit_trace_csv(rec);
  CHECK(csv.rfind("step,p0_re,p0_im,p1_re,p1_im,slack,norm\n", 0) == 0);
}

TEST_CASE("number lists") {
  CHECK(parse_number_list("1,10,100") == std::vector<double>{1, 10, 100});
  CHECK(parse_number_list("[1e3, 2]") == std::vector<double>{1000, 2});
  CHECK_THROWS_AS(parse_number_list("1,x"), ParseError);
}
