#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypconvex/decomposition.hpp"
#include "hypconvex/metrics.hpp"
#include "test_support.hpp"

using namespace hypconvex;
using namespace hypconvex::testing;

namespace {
const Cplx I{0.0, 1.0};
// High-precision values (mpmath, 30 digits).
constexpr double kAtanhHalf = 0.549306144334054845697622618461;
constexpr double kLog3 = 1.09861228866810969139524523692;
constexpr double kAtanh4OverSqrt20 = 1.44363547517881034249327674027;

DomainSpec halfplane() { return DomainSpec(1, {half({1.0}, 0.0)}, point({1.0})); }
DomainSpec quadrant() {
  return DomainSpec(2, {half({1.0, 0.0}, 0.0), half({0.0, 1.0}, 0.0)}, point({1.0, 1.0}));
}
DomainSpec halfplane_times_c() { return DomainSpec(2, {half({1.0, 0.0}, 0.0)}, point({1.0, 0.0})); }
DomainSpec strip5() { return DomainSpec(1, {half({1.0}, 0.0), half({-1.0}, -5.0)}, point({1.0})); }

// Midpoint quadrature of the strip {0 < Re s < h} density pi / (2 h sin(pi x / h))
// along the real segment [a, b], which is a geodesic by reflection symmetry.
double strip_quadrature(double a, double b, double h, int steps) {
  const double dx = (b - a) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = a + (i + 0.5) * dx;
    sum += std::numbers::pi / (2.0 * h * std::sin(std::numbers::pi * x / h)) * dx;
  }
  return sum;
}
}  // namespace

TEST_CASE("disc_distance") {
  CHECK(disc_distance(0.0, 0.5) == doctest::Approx(kAtanhHalf).epsilon(1e-14));
  CHECK(disc_distance(0.3 + 0.2 * I, 0.3 + 0.2 * I) == 0.0);
  for (const double t : {0.1, 0.5, 0.9, 0.999}) CHECK(disc_distance(0.0, t) == doctest::Approx(std::atanh(t)));
  CHECK_THROWS_AS(disc_distance(1.0, 0.0), DomainError);

  Rng rng(1);
  std::uniform_real_distribution<double> u(-0.69, 0.69);
  for (int s = 0; s < 300; ++s) {
    const Cplx a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    CHECK(disc_distance(a, b) == doctest::Approx(disc_distance(b, a)));
    CHECK(disc_distance(a, c) <= disc_distance(a, b) + disc_distance(b, c) + 1e-12);
  }
}

TEST_CASE("halfplane_distance") {
  CHECK(halfplane_distance(1.0, 3.0) == doctest::Approx(kAtanhHalf).epsilon(1e-14));
  CHECK(halfplane_distance(2.0 + I, 2.0 + I) == 0.0);
  CHECK(halfplane_distance(1.0, 1.0 + 4.0 * I) == doctest::Approx(kAtanh4OverSqrt20).epsilon(1e-14));
  CHECK(halfplane_distance(7.0 * 1.0, 7.0 * (1.0 + 4.0 * I)) == doctest::Approx(kAtanh4OverSqrt20));
  CHECK_THROWS_AS(halfplane_distance(-1.0, 1.0), DomainError);
  // Cayley transport agrees with the disc formula.
  const Cplx w1 = 0.4 + 2.0 * I, w2 = 3.0 - I;
  auto cayley = [](Cplx w) { return (w - 1.0) / (w + 1.0); };
  CHECK(halfplane_distance(w1, w2) == doctest::Approx(disc_distance(cayley(w1), cayley(w2))));
}

TEST_CASE("cara_lower") {
  CHECK(cara_lower(halfplane(), point({1.0}), point({3.0})) == doctest::Approx(kAtanhHalf));
  CHECK(cara_lower(quadrant(), point({1.0, 1.0}), point({3.0, 3.0})) == doctest::Approx(kAtanhHalf));
  CHECK(cara_lower(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 5.0 + I})) == 0.0);
  CHECK_THROWS_AS(cara_lower(halfplane(), point({-1.0}), point({1.0})), DomainError);
}

TEST_CASE("slice and classify_slice") {
  auto s = slice(quadrant(), point({1.0, 1.0}), point({3.0, 3.0}));
  REQUIRE(s.constraints.size() == 1);
  // Re(2 zeta) > -1, i.e. Re zeta > -1/2.
  CHECK(s.constraints[0].beta / std::abs(s.constraints[0].alpha) == doctest::Approx(-0.5));
  CHECK(classify_slice(s) == ModelShape::half_plane);

  const DomainSpec plane(2, {}, point({0.0, 0.0}));
  s = slice(plane, point({0.0, 0.0}), point({1.0, I}));
  CHECK(s.constraints.empty());
  CHECK(classify_slice(s) == ModelShape::whole_plane);

  s = slice(strip5(), point({1.0}), point({4.0}));
  CHECK(s.constraints.size() == 2);
  CHECK(classify_slice(s) == ModelShape::strip);

  // Parallel normals collapse to the tighter half-plane.
  s = slice(quadrant(), point({1.0, 1.0}), point({3.0, 2.0}));
  CHECK(classify_slice(s) == ModelShape::half_plane);

  s = slice(quadrant(), point({1.0, 1.0}), point({2.0, 1.0 + I}));
  CHECK(classify_slice(s) == ModelShape::bounded_polygon);

  CHECK_THROWS_AS(slice(halfplane(), point({1.0}), point({1.0})), DomainError);
}

TEST_CASE("chain_upper") {
  // Left Riemann sums of 1/x converge to log 3 from above.
  double prev = 10.0;
  for (const std::size_t n : {10u, 100u, 1000u, 10000u, 100000u}) {
    const double v = chain_upper(halfplane(), point({1.0}), point({3.0}), n);
    CHECK(v >= kLog3);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK(prev - kLog3 < 1e-5);
  CHECK(chain_upper(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 7.0 - 2.0 * I}), 100) == 0.0);
  CHECK(chain_upper(halfplane(), point({2.0}), point({2.0}), 100) == 0.0);
}

TEST_CASE("chain_upper_limit") {
  CHECK(chain_upper_limit(halfplane(), point({1.0}), point({3.0})) == doctest::Approx(kLog3).epsilon(1e-14));
  CHECK(chain_upper_limit(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 5.0})) == 0.0);
  // Every finite chain lies above the limit and approaches it.
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto d = planted_rank_domain(rng, n, n + 2, n);
    const CVector z = random_interior_point(rng, d), w = random_interior_point(rng, d);
    const double lim = chain_upper_limit(d, z, w);
    const double coarse = chain_upper(d, z, w, 64);
    const double fine = chain_upper(d, z, w, 65536);
    CHECK(coarse >= lim * (1.0 - 1e-12));
    CHECK(fine >= lim * (1.0 - 1e-12));
    CHECK(fine - lim <= 1e-3 * (1.0 + lim));
    CHECK(lim >= cara_lower(d, z, w) * (1.0 - 1e-12));
  }
}

TEST_CASE("slice_upper") {
  CHECK(slice_upper(quadrant(), point({1.0, 1.0}), point({3.0, 3.0})) == doctest::Approx(kAtanhHalf));
  CHECK(slice_upper(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 5.0})) == 0.0);

  const double strip = slice_upper(strip5(), point({1.0}), point({4.0}));
  const double oracle = strip_quadrature(1.0, 4.0, 5.0, 1000000);
  CHECK(std::abs(strip - oracle) < 1e-3);
  CHECK(strip == doctest::Approx(strip_distance(1.0, 4.0, 5.0)));
  CHECK_THROWS_AS(slice_upper(halfplane(), point({1.0}), point({1.0})), DomainError);
}

TEST_CASE("distance_bracket examples") {
  auto b = distance_bracket(halfplane(), point({1.0}), point({3.0}));
  CHECK(b.lower == doctest::Approx(kAtanhHalf).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(kAtanhHalf).epsilon(1e-12));

  b = distance_bracket(quadrant(), point({1.0, 1.0}), point({3.0, 3.0}));
  CHECK(b.lower == doctest::Approx(kAtanhHalf));
  CHECK(b.upper == doctest::Approx(kAtanhHalf));

  b = distance_bracket(quadrant(), point({1.0, 1.0}), point({3.0, 9.0}));
  CHECK(b.lower == doctest::Approx(halfplane_distance(1.0, 9.0)));
  CHECK(b.lower <= b.upper);
  CHECK(b.upper_method == BoundMethod::slice_halfplane);

  b = distance_bracket(quadrant(), point({1.0, 1.0}), point({2.0, 1.0 + I}));
  CHECK(b.lower <= b.upper);
  CHECK(b.upper_method == BoundMethod::chain);

  b = distance_bracket(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 5.0}));
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);
  CHECK(b.lower_method == BoundMethod::degenerate_flat);
}

TEST_CASE("ball_probe") {
  CHECK(ball_probe(halfplane(), point({1.0}), 0.6, point({3.0})) == BallMembership::certified_in);
  CHECK(ball_probe(halfplane(), point({1.0}), 0.5, point({3.0})) == BallMembership::certified_out);
  CHECK(ball_probe(halfplane(), point({1.0}), 1e-9, point({1.0})) == BallMembership::certified_in);
}

TEST_CASE("exhaustion_curve") {
  const std::vector<double> radii{10.0, 1e2, 1e3, 1e4};
  auto curve = exhaustion_curve(halfplane(), point({1.0}), point({3.0}), radii);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].lower <= curve[i - 1].lower);
  CHECK(std::abs(curve.back().lower - kAtanhHalf) < 1e-3);

  curve = exhaustion_curve(halfplane_times_c(), point({1.0, 0.0}), point({1.0, 5.0}), radii);
  CHECK(curve.front().lower > 0.0);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].lower < curve[i - 1].lower);
  CHECK(curve.back().lower < 1e-3);

  const auto box = truncate(quadrant(), 4.0);
  curve = exhaustion_curve(box, point({1.0, 1.0}), point({2.0, 1.0 + I}), std::vector<double>{5.0, 50.0, 500.0});
  CHECK(curve[0].lower == curve[1].lower);
  CHECK(curve[1].lower == curve[2].lower);

  CHECK_THROWS_AS(exhaustion_curve(halfplane(), point({1.0}), point({30.0}), std::vector<double>{10.0}),
                  DomainError);
}

TEST_CASE("metric properties on random domains") {
  Rng rng(41);
  int brackets = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t rank = 1 + trial % n;
    const auto d = planted_rank_domain(rng, n, rank + trial % 3, rank);
    for (int s = 0; s < 5; ++s) {
      const CVector x = random_interior_point(rng, d, 2.0);
      const CVector y = random_interior_point(rng, d, 2.0);
      const CVector z = random_interior_point(rng, d, 2.0);
      const double xy = cara_lower(d, x, y), yx = cara_lower(d, y, x);
      CHECK(std::abs(xy - yx) <= 1e-12);
      CHECK(cara_lower(d, x, z) <= xy + cara_lower(d, y, z) + 1e-12);

      const auto b = distance_bracket(d, x, y);
      CHECK(b.lower <= b.upper);
      CHECK(std::isfinite(b.upper));
      ++brackets;

      const double c1 = chain_upper(d, x, y, 500), c2 = chain_upper(d, y, x, 500);
      CHECK(std::abs(c1 - c2) <= 1e-6);

      // Adding a constraint (a box) never lowers the Caratheodory bound.
      const double big = 2.0 + 2.0 * std::max({sup_norm(x), sup_norm(y), sup_norm(d.witness())});
      CHECK(cara_lower(truncate(d, big), x, y) >= xy);
    }
  }
  CHECK(brackets == 300);
}

TEST_CASE("half-plane chain is twice the distance") {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.1, 20.0);
  for (int s = 0; s < 20; ++s) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) < 1e-3) continue;
    const double ratio = chain_upper(halfplane(), point({a}), point({b}), 10000) /
                         cara_lower(halfplane(), point({a}), point({b}));
    CHECK(ratio >= 2.0);
    CHECK(ratio <= 2.05);
  }
}
