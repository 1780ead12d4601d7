#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gpbvp/kernel.hpp"

using gpbvp::ConfigError;
using gpbvp::MultiIndex;
using gpbvp::SEKernel;

TEST_SUITE_BEGIN("kernel");

TEST_CASE("value and basic shape") {
  const SEKernel k(2.0, {0.5});
  CHECK(k({1.0}, {1.0}) == doctest::Approx(4.0));
  CHECK(k.dimension() == 1);
  CHECK(k.signal() == 2.0);
  const double t = (1.0 - 0.7) / 0.5;
  CHECK(k({1.0}, {0.7}) == doctest::Approx(4.0 * std::exp(-0.5 * t * t)));

  const SEKernel k2 = SEKernel::isotropic(1.5, 0.8, 2);
  CHECK(k2.dimension() == 2);
  CHECK(k2.lengthscales() == std::vector<double>{0.8, 0.8});
  const SEKernel k3 = k2.with_lengthscale(1.1);
  CHECK(k3.lengthscales() == std::vector<double>{1.1, 1.1});
  CHECK(k3.signal() == 1.5);
}

TEST_CASE("low-order derivatives against directly coded formulas") {
  // Classic SE identities, written out without the Hermite recursion:
  //   d/dx c        = -s^2 (x-x')/l^2 phi
  //   d/dx d/dx' c  =  s^2 (1/l^2 - (x-x')^2/l^4) phi
  //   d2/dx2 c      =  s^2 ((x-x')^2/l^4 - 1/l^2) phi
  const double s = 1.3, l = 0.6;
  const SEKernel k(s, {l});
  for (double x : {0.2, 1.0, -0.4}) {
    for (double xp : {0.5, -1.1}) {
      const double r = x - xp;
      const double phi = std::exp(-0.5 * r * r / (l * l));
      CHECK(k.derivative({1}, {0}, {x}, {xp}) ==
            doctest::Approx(-s * s * r / (l * l) * phi).epsilon(1e-12));
      CHECK(k.derivative({1}, {1}, {x}, {xp}) ==
            doctest::Approx(s * s * (1.0 / (l * l) - r * r / (l * l * l * l)) * phi)
                .epsilon(1e-12));
      CHECK(k.derivative({2}, {0}, {x}, {xp}) ==
            doctest::Approx(s * s * (r * r / (l * l * l * l) - 1.0 / (l * l)) * phi)
                .epsilon(1e-12));
      CHECK(k.derivative({0}, {0}, {x}, {xp}) == doctest::Approx(k({x}, {xp})));
    }
  }
}

TEST_CASE("2D derivatives factor over coordinates") {
  const SEKernel k2(0.9, {0.7, 1.2});
  const SEKernel ka(1.0, {0.7});
  const SEKernel kb(1.0, {1.2});
  const std::vector<double> x = {0.3, -0.8}, xp = {-0.5, 0.4};
  const double lhs = k2.derivative({2, 1}, {1, 2}, x, xp);
  const double rhs = 0.9 * 0.9 * ka.derivative({2}, {1}, {x[0]}, {xp[0]}) *
                     kb.derivative({1}, {2}, {x[1]}, {xp[1]});
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("mixed-derivative exchange symmetry on 200 random cases") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_int_distribution<int> ord(0, 3);
  std::uniform_int_distribution<int> dim(1, 2);
  for (int i = 0; i < 200; ++i) {
    const int d = dim(rng);
    const SEKernel k = d == 1 ? SEKernel(1.1, {0.8}) : SEKernel(1.1, {0.8, 1.3});
    std::vector<double> x(d), xp(d);
    std::vector<int> a(d), b(d);
    for (int r = 0; r < d; ++r) {
      x[r] = coord(rng);
      xp[r] = coord(rng);
      a[r] = ord(rng);
      b[r] = ord(rng);
    }
    const double lhs = k.derivative(MultiIndex(a), MultiIndex(b), x, xp);
    const double rhs = k.derivative(MultiIndex(b), MultiIndex(a), xp, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("translation invariance") {
  const SEKernel k(1.4, {0.9, 0.6});
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x = {coord(rng), coord(rng)}, xp = {coord(rng), coord(rng)};
    const std::vector<double> shift = {coord(rng), coord(rng)};
    std::vector<double> xs = {x[0] + shift[0], x[1] + shift[1]};
    std::vector<double> xps = {xp[0] + shift[0], xp[1] + shift[1]};
    const double a = k.derivative({2, 1}, {0, 1}, x, xp);
    const double b = k.derivative({2, 1}, {0, 1}, xs, xps);
    CHECK(a == doctest::Approx(b).epsilon(1e-11));
  }
}

TEST_CASE("derivative Gram matrix is PSD") {
  const SEKernel k(1.0, {0.5});
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  std::vector<double> pts(8);
  for (auto& p : pts) p = coord(rng);
  Eigen::MatrixXd g(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = k.derivative({1}, {1}, {pts[i]}, {pts[j]});
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues();
  CHECK(ev.minCoeff() >= -1e-10 * ev.maxCoeff());
}

TEST_CASE("per-coordinate order cap") {
  const SEKernel k(1.0, {1.0});
  CHECK_NOTHROW(k.derivative({4}, {4}, {0.3}, {0.1}));
  CHECK_THROWS_AS(k.derivative({5}, {4}, {0.3}, {0.1}), ConfigError);
  const SEKernel k2(1.0, {1.0, 1.0});
  CHECK_THROWS_AS(k2.derivative({0, 6}, {0, 3}, {0.0, 0.0}, {1.0, 1.0}), ConfigError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(SEKernel(0.0, {1.0}), ConfigError);
  CHECK_THROWS_AS(SEKernel(1.0, {-0.5}), ConfigError);
  CHECK_THROWS_AS(SEKernel(1.0, {}), ConfigError);
}

TEST_CASE("hermite_prob recursion spot checks") {
  CHECK(gpbvp::hermite_prob(0, 1.7) == doctest::Approx(1.0));
  CHECK(gpbvp::hermite_prob(1, 1.7) == doctest::Approx(1.7));
  CHECK(gpbvp::hermite_prob(2, 1.7) == doctest::Approx(1.7 * 1.7 - 1.0));
  CHECK(gpbvp::hermite_prob(3, 2.0) == doctest::Approx(2.0 * 2.0 * 2.0 - 3.0 * 2.0));
  CHECK(gpbvp::hermite_prob(4, 0.0) == doctest::Approx(3.0));
}

TEST_SUITE_END();
