#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gpbvp/expr.hpp"
#include "gpbvp/geometry.hpp"

using gpbvp::ConfigError;
using gpbvp::Discretization;
using gpbvp::Domain;
using gpbvp::Expression;
using gpbvp::InteriorRule;
using gpbvp::LinearDiffOperator;
using gpbvp::Point;
using gpbvp::sample_boundary;
using gpbvp::sample_interior;
using gpbvp::validate_discretization;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("interval membership and normals") {
  const Domain d = Domain::interval(0.0, 3.0);
  CHECK(d.dimension() == 1);
  CHECK(d.diameter() == doctest::Approx(3.0));
  CHECK(d.contains(Point{1.5}));
  CHECK(d.contains(Point{0.0}));
  CHECK_FALSE(d.contains(Point{3.1}));
  CHECK(d.on_boundary(Point{0.0}));
  CHECK(d.on_boundary(Point{3.0}));
  CHECK_FALSE(d.on_boundary(Point{1.0}));
  CHECK(d.outward_normal(Point{0.0}) == Point{-1.0});
  CHECK(d.outward_normal(Point{3.0}) == Point{1.0});
  CHECK_THROWS_AS(Domain::interval(2.0, 2.0), ConfigError);
}

TEST_CASE("unit disk membership and normals") {
  const Domain d = Domain::unit_disk();
  CHECK(d.dimension() == 2);
  CHECK(d.diameter() == doctest::Approx(2.0));
  CHECK(d.contains(Point{0.0, 0.0}));
  CHECK(d.contains(Point{0.6, 0.8}));
  CHECK_FALSE(d.contains(Point{0.8, 0.8}));
  CHECK(d.on_boundary(Point{0.6, 0.8}));
  CHECK_FALSE(d.on_boundary(Point{0.5, 0.5}));
  const Point n = d.outward_normal(Point{0.6, 0.8});
  CHECK(n[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(n[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(d.outward_normal(Point{0.5, 0.5}), ConfigError);
}

TEST_CASE("star-shaped domain reduces to the disk for r = 1") {
  const Domain d = Domain::star_shaped(Expression::parse("1"));
  CHECK(d.contains(Point{0.5, 0.5}));
  CHECK(d.on_boundary(Point{1.0, 0.0}));
  const Point n = d.outward_normal(Point{1.0, 0.0});
  CHECK(n[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(n[1]) < 1e-9);
}

TEST_CASE("star-shaped stand-in shape") {
  const Domain d = Domain::star_shaped(Expression::parse("0.8*(1+0.2*cos(3*x1))"));
  // r(0) = 0.96, r(pi/3) = 0.64.
  CHECK(d.contains(Point{0.95, 0.0}));
  CHECK_FALSE(d.contains(Point{0.97, 0.0}));
  const double a = std::numbers::pi / 3;
  CHECK(d.contains(Point{0.63 * std::cos(a), 0.63 * std::sin(a)}));
  CHECK_FALSE(d.contains(Point{0.66 * std::cos(a), 0.66 * std::sin(a)}));
  CHECK(d.on_boundary(Point{0.96, 0.0}, 1e-9));
  CHECK(d.diameter() > 0.0);
  CHECK(d.diameter() <= 2.0 * 0.96 + 1e-12);
  CHECK_THROWS_AS(Domain::star_shaped(Expression::parse("-1")), ConfigError);
  CHECK_THROWS_AS(Domain::star_shaped(Expression::parse("x2")), ConfigError);
}

TEST_CASE("boundary normals are unit length") {
  const std::vector<Domain> domains = {
      Domain::unit_disk(), Domain::star_shaped(Expression::parse("0.8*(1+0.2*cos(3*x1))"))};
  for (const Domain& d : domains) {
    for (const Point& b : sample_boundary(d, 12)) {
      const Point n = d.outward_normal(b);
      CHECK(std::hypot(n[0], n[1]) == doctest::Approx(1.0).epsilon(1e-12));
      if (d.kind() == Domain::Kind::unit_disk) {
        // Convexity: the outward normal points away from the center.
        CHECK(n[0] * b[0] + n[1] * b[1] > 0.0);
      }
    }
  }
}

TEST_CASE("equidistant interior layout") {
  const Domain d = Domain::interval(0.0, 3.0);
  const auto pts = sample_interior(d, 5, InteriorRule::equidistant);
  REQUIRE(pts.size() == 5);
  for (std::size_t j = 0; j < 5; ++j)
    CHECK(pts[j][0] == doctest::Approx((static_cast<double>(j) + 1) * 0.5).epsilon(1e-15));
  CHECK_THROWS_AS(sample_interior(Domain::unit_disk(), 5, InteriorRule::equidistant), ConfigError);
}

TEST_CASE("sunflower layout is deterministic, inside, duplicate-free") {
  const Domain d = Domain::unit_disk();
  const auto a = sample_interior(d, 40, InteriorRule::sunflower);
  const auto b = sample_interior(d, 40, InteriorRule::sunflower);
  REQUIRE(a.size() == 40);
  CHECK(a == b);
  std::set<std::pair<double, double>> seen;
  for (const auto& p : a) {
    CHECK(p[0] * p[0] + p[1] * p[1] < 1.0);
    seen.insert({p[0], p[1]});
  }
  CHECK(seen.size() == 40);
  CHECK_THROWS_AS(sample_interior(Domain::interval(0, 1), 4, InteriorRule::sunflower),
                  ConfigError);
}

TEST_CASE("uniform_random is seeded and inside") {
  const Domain d = Domain::unit_disk();
  const auto a = sample_interior(d, 25, InteriorRule::uniform_random, 42);
  const auto b = sample_interior(d, 25, InteriorRule::uniform_random, 42);
  const auto c = sample_interior(d, 25, InteriorRule::uniform_random, 43);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) CHECK(p[0] * p[0] + p[1] * p[1] < 1.0);
}

TEST_CASE("boundary sampling") {
  const Domain i = Domain::interval(-1.0, 2.0);
  const auto ib = sample_boundary(i, 2);
  CHECK(ib == std::vector<Point>{{-1.0}, {2.0}});
  CHECK_THROWS_AS(sample_boundary(i, 3), ConfigError);

  const Domain d = Domain::unit_disk();
  const auto db = sample_boundary(d, 4);
  REQUIRE(db.size() == 4);
  CHECK(db[0][0] == doctest::Approx(1.0));
  CHECK(db[1][1] == doctest::Approx(1.0));
  for (const auto& p : db) CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0).epsilon(1e-12));

  const Domain s = Domain::star_shaped(Expression::parse("0.8*(1+0.2*cos(3*x1))"));
  for (const auto& p : sample_boundary(s, 9)) CHECK(s.on_boundary(p, 1e-9));
}

TEST_CASE("discretization invariants for every built-in layout") {
  const auto id1 = LinearDiffOperator::identity(1);
  const auto id2 = LinearDiffOperator::identity(2);
  const auto check = [](const Domain& dom, const std::vector<Point>& interior,
                        const std::vector<Point>& bpts, const LinearDiffOperator& id) {
    Discretization disc;
    disc.interior = interior;
    for (const auto& p : bpts) disc.boundary.emplace_back(p, id);
    CHECK_NOTHROW(validate_discretization(dom, disc));
  };
  const Domain interval = Domain::interval(0.0, 3.0);
  check(interval, sample_interior(interval, 20, InteriorRule::equidistant),
        sample_boundary(interval, 2), id1);
  const Domain disk = Domain::unit_disk();
  check(disk, sample_interior(disk, 16, InteriorRule::sunflower), sample_boundary(disk, 5), id2);
  check(disk, sample_interior(disk, 50, InteriorRule::uniform_random, 20240101),
        sample_boundary(disk, 20), id2);
  const Domain star = Domain::star_shaped(Expression::parse("0.8*(1+0.2*cos(3*x1))"));
  check(star, sample_interior(star, 34, InteriorRule::sunflower), sample_boundary(star, 20), id2);

  // Violations are rejected.
  Discretization bad;
  bad.interior = {{0.0}};  // on the boundary, not strictly inside
  CHECK_THROWS_AS(validate_discretization(interval, bad), ConfigError);
  Discretization dup;
  dup.interior = {{1.0}, {1.0}};
  CHECK_THROWS_AS(validate_discretization(interval, dup), ConfigError);
}

TEST_SUITE_END();
