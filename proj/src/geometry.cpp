#include "gpbvp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gpbvp {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Uniform double in [0, 1) built directly from the generator's bits, so
// sequences are reproducible across standard library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Domain::Domain(Kind kind, double a, double b, std::optional<Expression> radius)
    : kind_(kind), a_(a), b_(b), radius_(std::move(radius)) {
  switch (kind_) {
    case Kind::interval:
      if (!(a_ < b_)) throw ConfigError("interval requires a < b");
      diameter_ = b_ - a_;
      break;
    case Kind::unit_disk:
      diameter_ = 2.0;
      break;
    case Kind::star_shaped: {
      double rmax = 0.0;
      for (int j = 0; j < 1024; ++j) {
        double r = star_radius_at(2.0 * kPi * j / 1024.0);
        if (!(r > 0.0)) throw ConfigError("star-shaped radius must be positive on [0, 2pi)");
        rmax = std::max(rmax, r);
      }
      diameter_ = 2.0 * rmax;
      break;
    }
  }
}

Domain Domain::interval(double a, double b) { return Domain(Kind::interval, a, b, std::nullopt); }

Domain Domain::unit_disk() { return Domain(Kind::unit_disk, 0.0, 0.0, std::nullopt); }

Domain Domain::star_shaped(Expression radius) {
  if (radius.min_dimension() > 1)
    throw ConfigError("star-shaped radius must be a function of x1 (the polar angle) only");
  return Domain(Kind::star_shaped, 0.0, 0.0, std::move(radius));
}

double Domain::interval_a() const {
  if (kind_ != Kind::interval) throw ConfigError("not an interval domain");
  return a_;
}

double Domain::interval_b() const {
  if (kind_ != Kind::interval) throw ConfigError("not an interval domain");
  return b_;
}

const Expression& Domain::star_radius() const {
  if (kind_ != Kind::star_shaped) throw ConfigError("not a star-shaped domain");
  return *radius_;
}

double Domain::star_radius_at(double theta) const {
  const double arg[1] = {theta};
  return (*radius_)(std::span<const double>(arg, 1));
}

bool Domain::contains(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dimension())) return false;
  switch (kind_) {
    case Kind::interval:
      return x[0] >= a_ && x[0] <= b_;
    case Kind::unit_disk:
      return x[0] * x[0] + x[1] * x[1] <= 1.0;
    case Kind::star_shaped:
      return norm2(x) <= star_radius_at(std::atan2(x[1], x[0]));
  }
  return false;
}

bool Domain::on_boundary(std::span<const double> x, double tol) const {
  if (x.size() != static_cast<std::size_t>(dimension())) return false;
  switch (kind_) {
    case Kind::interval:
      return std::fabs(x[0] - a_) <= tol || std::fabs(x[0] - b_) <= tol;
    case Kind::unit_disk:
      return std::fabs(x[0] * x[0] + x[1] * x[1] - 1.0) <= tol;
    case Kind::star_shaped:
      return std::fabs(norm2(x) - star_radius_at(std::atan2(x[1], x[0]))) <= tol;
  }
  return false;
}

Point Domain::outward_normal(std::span<const double> x) const {
  if (!on_boundary(x, 1e-9)) throw ConfigError("outward_normal: point is not on the boundary");
  switch (kind_) {
    case Kind::interval:
      return {std::fabs(x[0] - a_) <= std::fabs(x[0] - b_) ? -1.0 : 1.0};
    case Kind::unit_disk: {
      double n = norm2(x);
      return {x[0] / n, x[1] / n};
    }
    case Kind::star_shaped: {
      const double theta = std::atan2(x[1], x[0]);
      const double h = 1e-6;
      const double dr = (star_radius_at(theta + h) - star_radius_at(theta - h)) / (2.0 * h);
      const double r = star_radius_at(theta);
      const double ct = std::cos(theta), st = std::sin(theta);
      // tangent of theta -> r(theta)(cos, sin), rotated -90 degrees
      const double tx = dr * ct - r * st;
      const double ty = dr * st + r * ct;
      const double len = std::hypot(tx, ty);
      return {ty / len, -tx / len};
    }
  }
  throw ConfigError("unreachable domain kind");
}

double Domain::diameter() const { return diameter_; }

std::vector<Point> sample_interior(const Domain& domain, int n, InteriorRule rule,
                                   std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample_interior requires n >= 1");
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));

  switch (rule) {
    case InteriorRule::equidistant: {
      if (domain.kind() != Domain::Kind::interval)
        throw ConfigError("equidistant interior sampling is only defined in 1D");
      const double a = domain.interval_a(), b = domain.interval_b();
      for (int j = 1; j <= n; ++j) points.push_back({a + j * (b - a) / (n + 1)});
      break;
    }
    case InteriorRule::sunflower: {
      if (domain.dimension() != 2)
        throw ConfigError("sunflower interior sampling is only defined in 2D");
      // golden angle 2 pi (1 - 1/phi)
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      for (int j = 1; j <= n; ++j) {
        const double rho = std::sqrt((j - 0.5) / n);  // < 1, strictly inside
        const double theta = golden * j;
        double scale = 1.0;
        if (domain.kind() == Domain::Kind::star_shaped) {
          const double arg[1] = {std::atan2(std::sin(theta), std::cos(theta))};
          scale = domain.star_radius()(std::span<const double>(arg, 1));
        }
        points.push_back({rho * scale * std::cos(theta), rho * scale * std::sin(theta)});
      }
      break;
    }
    case InteriorRule::uniform_random: {
      std::mt19937_64 rng(seed);
      double lo0, hi0, lo1 = 0.0, hi1 = 0.0;
      if (domain.kind() == Domain::Kind::interval) {
        lo0 = domain.interval_a();
        hi0 = domain.interval_b();
      } else {
        const double r = domain.diameter() / 2.0;
        lo0 = lo1 = -r;
        hi0 = hi1 = r;
      }
      while (points.size() < static_cast<std::size_t>(n)) {
        Point p(static_cast<std::size_t>(domain.dimension()));
        p[0] = lo0 + (hi0 - lo0) * uniform01(rng);
        if (domain.dimension() == 2) p[1] = lo1 + (hi1 - lo1) * uniform01(rng);
        if (domain.contains(p) && !domain.on_boundary(p, 1e-9)) points.push_back(std::move(p));
      }
      break;
    }
  }
  return points;
}

std::vector<Point> sample_boundary(const Domain& domain, int n) {
  if (n < 1) throw ConfigError("sample_boundary requires n >= 1");
  std::vector<Point> points;
  switch (domain.kind()) {
    case Domain::Kind::interval:
      if (n != 2)
        throw ConfigError("an interval has exactly 2 boundary points; got n = " +
                          std::to_string(n));
      points.push_back({domain.interval_a()});
      points.push_back({domain.interval_b()});
      break;
    case Domain::Kind::unit_disk:
      for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * kPi * j / n;
        points.push_back({std::cos(theta), std::sin(theta)});
      }
      break;
    case Domain::Kind::star_shaped:
      for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * kPi * j / n;
        const double arg[1] = {theta};
        const double r = domain.star_radius()(std::span<const double>(arg, 1));
        points.push_back({r * std::cos(theta), r * std::sin(theta)});
      }
      break;
  }
  return points;
}

void validate_discretization(const Domain& domain, const Discretization& disc) {
  const std::size_t d = static_cast<std::size_t>(domain.dimension());
  for (const auto& p : disc.interior) {
    if (p.size() != d) throw ConfigError("interior point has wrong dimension");
    if (!domain.contains(p) || domain.on_boundary(p, 1e-12))
      throw ConfigError("interior point is not strictly inside the domain");
  }
  for (const auto& [p, op] : disc.boundary) {
    if (p.size() != d) throw ConfigError("boundary point has wrong dimension");
    if (!domain.on_boundary(p, 1e-12))
      throw ConfigError("boundary point does not lie on the boundary");
    if (op.dimension() != domain.dimension())
      throw ConfigError("boundary operator dimension mismatch");
  }

  std::vector<const Point*> all;
  for (const auto& p : disc.interior) all.push_back(&p);
  for (const auto& [p, op] : disc.boundary) all.push_back(&p);
  const double min_dist = 1e-9 * domain.diameter();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      double dist2 = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        const double diff = (*all[i])[r] - (*all[j])[r];
        dist2 += diff * diff;
      }
      if (std::sqrt(dist2) <= min_dist)
        throw ConfigError("discretization contains duplicate (or nearly duplicate) points");
    }
}

}  // namespace gpbvp
