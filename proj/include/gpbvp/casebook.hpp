#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpbvp/gp.hpp"

namespace gpbvp {

/// The four built-in case studies:
///   heat1d               1D steady-state heat equation with a sharp
///                        conductivity transition, Neumann left /
///                        Dirichlet right, on [0, 3]
///   disk_poisson         -laplace(u) = 1 on the unit disk, u = 0 on the
///                        boundary (closed-form solution available)
///   disk_gaussian_source -laplace(u) = narrow Gaussian bump on the unit
///                        disk, u = 0 on the boundary
///   star_gaussian_source the same source family on a star-shaped domain
enum class CaseId { heat1d, disk_poisson, disk_gaussian_source, star_gaussian_source };

std::string_view case_name(CaseId id);
CaseId case_from_name(std::string_view name);
std::vector<CaseId> all_cases();

struct CaseOpTerm {
  std::vector<int> alpha;
  std::string coefficient;  // expression source
};

struct CaseBoundaryRule {
  std::string where;  // "left" / "right" (interval ends) or "all"
  std::vector<CaseOpTerm> op_terms;
  std::string value;  // expression source, evaluated at each boundary point
};

struct EllSearch {
  double ell_min;
  double ell_max;
  int count;
};

/// The full description of one case study as expression source strings
/// and plain parameters. This single table backs both build_case and the
/// config documents exported for the command-line tool, so the two stay
/// consistent by construction.
///
/// The divergence-form interior operator of the heat case is stored
/// pre-expanded (product rule applied by hand); the library does no
/// symbolic differentiation.
struct CaseText {
  CaseId id;
  std::string domain_kind;  // interval | unit_disk | star_shaped
  double interval_a = 0.0, interval_b = 0.0;
  std::string star_radius;  // boundary radius r(x1), star_shaped only
  std::vector<CaseOpTerm> op_terms;
  std::string source;
  std::vector<CaseBoundaryRule> boundary;
  double signal = 1.0;
  std::optional<double> fixed_ell;      // exactly one of these two is set
  std::optional<EllSearch> ell_search;
  int default_ni = 1;
  int default_nb = 1;
  std::string strategy;  // equidistant | sunflower | uniform_random
  std::uint64_t seed = 0;
};

const CaseText& case_text(CaseId id);

/// ProblemSpec at the case's published parameters, with n_i interior
/// points placed by the case's sampling strategy and n_b boundary
/// points. When the case uses a lengthscale search, the generated
/// kernel starts at the geometric mean of the search bounds.
ProblemSpec build_case(CaseId id, int n_i, int n_b);

/// (1 - x1^2 - x2^2) / 4, the closed-form solution of the constant-source
/// disk case. Throws ConfigError outside the closed unit disk.
double exact_disk_solution(std::span<const double> x);

/// Dense 1D finite-difference reference solution on a uniform grid with
/// a linear-interpolation accessor. Immutable after construction.
class FDReference {
 public:
  FDReference(double a, double b, std::vector<double> values, double residual);

  int grid_size() const { return static_cast<int>(values_.size()); }
  double grid_point(int k) const { return a_ + h_ * k; }
  const std::vector<double>& values() const { return values_; }

  /// Max-norm residual of the solved discrete system.
  double residual() const { return residual_; }

  /// Linear interpolation; throws ConfigError more than 1e-9 outside [a, b].
  double operator()(double x) const;

 private:
  double a_, b_, h_;
  std::vector<double> values_;
  double residual_;
};

/// Second-order finite-difference solve of the heat1d case on a uniform
/// grid of n intervals (n + 1 points) over [0, 3]; doubling n nests the
/// grids exactly. The operator is discretized in conservative
/// (flux) form with midpoint conductivities, the Neumann condition at 0
/// uses a one-sided second-order stencil, and the resulting tridiagonal
/// system is solved directly. `source_scale` multiplies the right-hand
/// side (used by linearity checks). Requires n >= 16.
FDReference fd_solve_heat1d(int n, double source_scale = 1.0);

}  // namespace gpbvp
