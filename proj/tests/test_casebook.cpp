#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpbvp/casebook.hpp"
#include "gpbvp/errors.hpp"

using namespace gpbvp;

TEST_SUITE_BEGIN("casebook");

TEST_CASE("case names round-trip") {
  const auto ids = all_cases();
  REQUIRE(ids.size() == 4);
  for (CaseId id : ids) CHECK(case_from_name(case_name(id)) == id);
  CHECK(case_name(CaseId::heat1d) == "heat1d");
  CHECK(case_name(CaseId::disk_poisson) == "disk_poisson");
  CHECK(case_name(CaseId::disk_gaussian_source) == "disk_gaussian_source");
  CHECK(case_name(CaseId::star_gaussian_source) == "star_gaussian_source");
  CHECK_THROWS_AS(case_from_name("heat2d"), ConfigError);
}

TEST_CASE("case table pins the published parameters") {
  const CaseText& heat = case_text(CaseId::heat1d);
  CHECK(heat.domain_kind == "interval");
  CHECK(heat.interval_a == 0.0);
  CHECK(heat.interval_b == 3.0);
  CHECK(heat.op_terms.size() == 3);
  CHECK(heat.signal == 2.0);
  CHECK_FALSE(heat.fixed_ell.has_value());
  REQUIRE(heat.ell_search.has_value());
  CHECK(heat.ell_search->ell_min == doctest::Approx(0.03));
  CHECK(heat.ell_search->ell_max == doctest::Approx(9.0));
  CHECK(heat.default_ni == 20);
  CHECK(heat.default_nb == 2);
  CHECK(heat.strategy == "equidistant");

  const CaseText& disk = case_text(CaseId::disk_poisson);
  CHECK(disk.domain_kind == "unit_disk");
  CHECK(disk.source == "1");
  CHECK(disk.signal == 0.1);
  REQUIRE(disk.fixed_ell.has_value());
  CHECK(*disk.fixed_ell == 3.5);
  CHECK(disk.default_ni == 16);
  CHECK(disk.default_nb == 5);
  CHECK(disk.strategy == "sunflower");

  const CaseText& bump = case_text(CaseId::disk_gaussian_source);
  CHECK(bump.signal == 0.01);
  CHECK_FALSE(bump.fixed_ell.has_value());
  CHECK(bump.default_ni == 50);
  CHECK(bump.default_nb == 20);
  CHECK(bump.strategy == "uniform_random");
  CHECK(bump.seed == 20240101);

  const CaseText& star = case_text(CaseId::star_gaussian_source);
  CHECK(star.domain_kind == "star_shaped");
  CHECK(star.star_radius == "0.8*(1+0.2*cos(3*x1))");
  CHECK(star.signal == 0.2);
  REQUIRE(star.fixed_ell.has_value());
  CHECK(*star.fixed_ell == 0.18);
  CHECK(star.default_ni == 34);
  CHECK(star.default_nb == 20);
  CHECK(star.strategy == "sunflower");
}

TEST_CASE("build_case produces the requested discretization") {
  for (CaseId id : all_cases()) {
    const CaseText& ct = case_text(id);
    const ProblemSpec spec = build_case(id, ct.default_ni, ct.default_nb);
    CHECK(spec.interior().size() == static_cast<std::size_t>(ct.default_ni));
    CHECK(spec.boundary().size() == static_cast<std::size_t>(ct.default_nb));
    CHECK(spec.kernel().signal() == ct.signal);
    // Deterministic: the same call yields the identical spec.
    CHECK(build_case(id, ct.default_ni, ct.default_nb) == spec);
  }
  CHECK_THROWS_AS(build_case(CaseId::heat1d, 0, 2), ConfigError);
}

TEST_CASE("heat case boundary data") {
  const ProblemSpec spec = build_case(CaseId::heat1d, 20, 2);
  REQUIRE(spec.boundary().size() == 2);
  const BoundaryDatum& left = spec.boundary()[0];
  const BoundaryDatum& right = spec.boundary()[1];
  CHECK(left.point == Point{0.0});
  CHECK(left.op.order() == 1);  // insulated end: du/dx = 0
  CHECK(left.value == 0.0);
  CHECK(right.point == Point{3.0});
  CHECK(right.op.order() == 0);  // fixed end: u = 0
  CHECK(right.value == 0.0);
  CHECK(spec.interior_op().order() == 2);
  // Search cases start from the geometric mean of the search bounds.
  CHECK(spec.kernel().lengthscales()[0] == doctest::Approx(std::sqrt(0.03 * 9.0)).epsilon(1e-14));
}

TEST_CASE("fixed-lengthscale cases keep their published kernels") {
  CHECK(build_case(CaseId::disk_poisson, 16, 5).kernel().lengthscales() ==
        std::vector<double>{3.5, 3.5});
  CHECK(build_case(CaseId::star_gaussian_source, 34, 20).kernel().lengthscales() ==
        std::vector<double>{0.18, 0.18});
}

TEST_CASE("gaussian source peaks at its published center") {
  const ProblemSpec spec = build_case(CaseId::disk_gaussian_source, 10, 5);
  const Point center{0.6 * std::cos(0.2), 0.6 * std::sin(0.2)};
  CHECK(spec.source()(center) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(spec.source()(Point{0.0, 0.0}) < 4.0);
  CHECK(spec.source()(Point{-0.5, 0.3}) < 1e-6);
}

TEST_CASE("exact disk solution") {
  CHECK(exact_disk_solution(Point{0.0, 0.0}) == 0.25);
  CHECK(exact_disk_solution(Point{0.5, 0.5}) == 0.125);
  CHECK(exact_disk_solution(Point{1.0, 0.0}) == 0.0);
  CHECK(std::abs(exact_disk_solution(Point{0.6, 0.8})) <= 1e-15);
  CHECK_THROWS_AS(exact_disk_solution(Point{1.1, 0.0}), ConfigError);
  CHECK_THROWS_AS(exact_disk_solution(Point{0.5}), ConfigError);
}

TEST_CASE("finite-difference reference basics") {
  CHECK_THROWS_AS(fd_solve_heat1d(15), ConfigError);
  const FDReference ref = fd_solve_heat1d(1000);
  REQUIRE(ref.grid_size() == 1001);
  CHECK(ref.values().back() == 0.0);  // Dirichlet end, substituted exactly
  CHECK(ref.residual() <= 1e-12);

  // The insulated-end stencil is satisfied to roundoff.
  const double h = 3.0 / 1000.0;
  const auto& v = ref.values();
  const double neumann = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  CHECK(std::abs(neumann) <= 1e-12);
}

TEST_CASE("finite-difference reference converges at second order") {
  const auto coarse = fd_solve_heat1d(400).values();
  const auto mid = fd_solve_heat1d(800).values();
  const auto fine = fd_solve_heat1d(1600).values();
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t j = 0; j < coarse.size(); ++j)
    d1 = std::max(d1, std::abs(coarse[j] - mid[2 * j]));
  for (std::size_t j = 0; j < mid.size(); ++j)
    d2 = std::max(d2, std::abs(mid[j] - fine[2 * j]));
  CHECK(d1 < 1e-3);
  const double ratio = d1 / d2;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("finite-difference reference value regression") {
  const FDReference ref = fd_solve_heat1d(10000);
  CHECK(ref.values().front() == doctest::Approx(-5.1222526384808686).epsilon(1e-9));
  CHECK(ref(0.0) == ref.values().front());
}

TEST_CASE("scaling the source scales the solution exactly") {
  const auto base = fd_solve_heat1d(200).values();
  const auto twice = fd_solve_heat1d(200, 2.0).values();
  REQUIRE(base.size() == twice.size());
  for (std::size_t j = 0; j < base.size(); ++j) CHECK(twice[j] == 2.0 * base[j]);
}

TEST_CASE("reference interpolation") {
  const FDReference ref = fd_solve_heat1d(200);
  // Node coordinates are reconstructed as a + h*k, so interpolating there
  // reproduces the stored value only up to coordinate roundoff times slope.
  for (int k : {0, 57, 123, 200})
    CHECK(std::fabs(ref(ref.grid_point(k)) - ref.values()[k]) <= 1e-12);
  const double mid = (ref.values()[100] + ref.values()[101]) / 2.0;
  CHECK(ref(ref.grid_point(100) + 0.5 * 3.0 / 200.0) == doctest::Approx(mid).epsilon(1e-12));
  CHECK_THROWS_AS(ref(3.1), ConfigError);
  CHECK_THROWS_AS(ref(-0.1), ConfigError);
  CHECK_NOTHROW(ref(3.0 + 5e-10));
}

TEST_SUITE_END();
