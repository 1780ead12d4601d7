#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "gpbvp/geometry.hpp"
#include "gpbvp/kernel.hpp"
#include "gpbvp/operators.hpp"

namespace gpbvp {

/// One boundary observation B_j[u](p_j) = g(p_j).
struct BoundaryDatum {
  Point point;
  LinearDiffOperator op;
  double value;

  bool operator==(const BoundaryDatum& other) const;
};

/// A fully discretized boundary value problem: the domain, the interior
/// operator L with source f, the interior collocation points where
/// L[u] = f is enforced, the boundary data, and the prior kernel.
class ProblemSpec {
 public:
  ProblemSpec(Domain domain, LinearDiffOperator interior_op, Expression source,
              std::vector<Point> interior, std::vector<BoundaryDatum> boundary, SEKernel kernel);

  const Domain& domain() const { return domain_; }
  const LinearDiffOperator& interior_op() const { return interior_op_; }
  const Expression& source() const { return source_; }
  const std::vector<Point>& interior() const { return interior_; }
  const std::vector<BoundaryDatum>& boundary() const { return boundary_; }
  const SEKernel& kernel() const { return kernel_; }

  std::size_t observation_count() const { return interior_.size() + boundary_.size(); }

  /// Non-empty when some boundary operator order is not below the
  /// interior operator order (non-fatal).
  const std::string& order_warning() const { return order_warning_; }

  /// Copy with all kernel lengthscales tied to `ell`.
  ProblemSpec with_lengthscale(double ell) const;

  /// Exact (bitwise / AST-level) equality; used by config round-trips.
  bool operator==(const ProblemSpec& other) const;

 private:
  Domain domain_;
  LinearDiffOperator interior_op_;
  Expression source_;
  std::vector<Point> interior_;
  std::vector<BoundaryDatum> boundary_;
  SEKernel kernel_;
  std::string order_warning_;
};

/// The cross-covariance system of the conditioned prior: observation
/// covariance matrix C (built blockwise from the operator-applied
/// kernel), right-hand side y = (f(X^i); g(X^b)), and the Cholesky
/// factor of C + jitter * I.
struct AssembledSystem {
  Eigen::MatrixXd C;     // pre-jitter observation covariance
  Eigen::VectorXd y;     // observed values
  Eigen::MatrixXd chol;  // lower-triangular factor of C + jitter_used * I
  double jitter_used = 0.0;
};

/// Builds C and y and factorizes with adaptive jitter: starting from
/// 1e-10 * max(diag C), escalating tenfold up to 1e-4 * max(diag C),
/// then throwing IllConditionedError.
AssembledSystem assemble(const ProblemSpec& spec);

/// The conditioned Gaussian field: posterior mean, covariance and
/// pointwise variance. Evaluation is pure and thread-safe.
class PosteriorField {
 public:
  PosteriorField(ProblemSpec spec, AssembledSystem system);

  const ProblemSpec& spec() const { return spec_; }
  const AssembledSystem& system() const { return system_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Posterior mean m(x) = c(x)^T C^{-1} y.
  double mean(std::span<const double> x) const;

  /// Pointwise posterior variance c(x,x) - c(x)^T C^{-1} c(x), clipped to
  /// zero from below. A value below -1e-10 * s^2 before clipping throws
  /// NumericalBreakdownError.
  double variance(std::span<const double> x) const;

  /// Posterior covariance c(x,x') - c(x)^T C^{-1} c(x').
  double covariance(std::span<const double> x, std::span<const double> xp) const;

  /// A[m](x) for a linear differential operator A, computed analytically
  /// through the kernel derivatives of the weighted sum (no finite
  /// differences). Used for collocation-residual diagnostics.
  double apply_operator_to_mean(const LinearDiffOperator& op, std::span<const double> x) const;

  double mean(std::initializer_list<double> x) const {
    return mean(std::span<const double>(x.begin(), x.size()));
  }
  double variance(std::initializer_list<double> x) const {
    return variance(std::span<const double>(x.begin(), x.size()));
  }

 private:
  Eigen::VectorXd cross_covariance(std::span<const double> x) const;
  Eigen::VectorXd refined_solve(const Eigen::VectorXd& rhs) const;

  ProblemSpec spec_;
  AssembledSystem system_;
  Eigen::VectorXd weights_;
};

/// Convenience: assemble + condition in one step.
PosteriorField solve(const ProblemSpec& spec);

/// log p(y) = -1/2 y^T C^{-1} y - 1/2 log det C - n/2 log 2pi, computed
/// from the Cholesky factor of the assembled system.
double log_marginal_likelihood(const AssembledSystem& system);
double log_marginal_likelihood(const ProblemSpec& spec);

struct LengthscaleGrid {
  double ell_min;
  double ell_max;
  int count;
  bool log_spaced = true;
};

/// 40 log-spaced points spanning [diameter/100, 3 * diameter].
LengthscaleGrid default_lengthscale_grid(const Domain& domain);

struct ProfilePoint {
  double ell;
  double log_likelihood;        // -inf where assembly failed
  double normalized_likelihood;  // likelihood / max likelihood, in [0, 1]
};

struct LengthscaleSelection {
  double best_ell;
  std::vector<ProfilePoint> profile;
};

/// Evaluates the marginal likelihood on the lengthscale grid (tied across
/// dimensions) and returns the maximizer plus the profile normalized so
/// its maximum is exactly 1. Grid points where assembly fails are kept in
/// the profile with likelihood 0 and skipped for the argmax; if every
/// point fails, throws NumericalBreakdownError.
LengthscaleSelection select_lengthscale(const ProblemSpec& spec_template,
                                        const LengthscaleGrid& grid);

}  // namespace gpbvp
