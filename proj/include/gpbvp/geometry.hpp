#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpbvp/expr.hpp"
#include "gpbvp/operators.hpp"

namespace gpbvp {

using Point = std::vector<double>;

/// A solid domain Omega with boundary dOmega. Three shapes are built in:
/// a 1D interval [a, b], the 2D unit disk, and a 2D star-shaped region
/// whose boundary radius is an expression of the polar angle (written in
/// the variable x1). Immutable after construction.
class Domain {
 public:
  enum class Kind { interval, unit_disk, star_shaped };

  static Domain interval(double a, double b);
  static Domain unit_disk();
  static Domain star_shaped(Expression radius);

  Kind kind() const { return kind_; }
  int dimension() const { return kind_ == Kind::interval ? 1 : 2; }

  /// Interval endpoints; throws for other shapes.
  double interval_a() const;
  double interval_b() const;
  /// Boundary radius r(theta); throws for other shapes.
  const Expression& star_radius() const;

  /// True on the closed domain (boundary included).
  bool contains(std::span<const double> x) const;

  /// True when x satisfies the boundary's implicit equation to `tol`.
  bool on_boundary(std::span<const double> x, double tol = 1e-12) const;

  /// Unit outward normal at a boundary point. Interval: -1 at a, +1 at b.
  /// Disk: x itself normalized. Star-shaped: normal of the parametric
  /// curve, with the radius derivative taken numerically.
  Point outward_normal(std::span<const double> x) const;

  double diameter() const;

 private:
  Domain(Kind kind, double a, double b, std::optional<Expression> radius);
  double star_radius_at(double theta) const;

  Kind kind_;
  double a_ = 0.0, b_ = 0.0;
  std::optional<Expression> radius_;
  double diameter_ = 0.0;
};

enum class InteriorRule { equidistant, sunflower, uniform_random };

/// n points strictly inside the domain.
///   equidistant (1D):     x_j = a + j (b-a)/(n+1), j = 1..n
///   sunflower (2D):       Fibonacci-lattice layout scaled into the domain
///   uniform_random:       rejection sampling, deterministic given `seed`
std::vector<Point> sample_interior(const Domain& domain, int n, InteriorRule rule,
                                   std::uint64_t seed = 0);

/// n boundary points, equispaced in the boundary parameter. For an
/// interval n must be exactly 2 (the endpoints); for the disk the points
/// sit at angles 2 pi j / n, j = 0..n-1.
std::vector<Point> sample_boundary(const Domain& domain, int n);

/// Interior points plus boundary points with their per-point operators.
struct Discretization {
  std::vector<Point> interior;
  std::vector<std::pair<Point, LinearDiffOperator>> boundary;
};

/// Enforces the discretization invariants: interior points strictly
/// inside, boundary points on dOmega to 1e-12, and no pair of points
/// closer than 1e-9 times the domain diameter. Throws ConfigError.
void validate_discretization(const Domain& domain, const Discretization& disc);

}  // namespace gpbvp
