#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpbvp/expr.hpp"
#include "gpbvp/kernel.hpp"
#include "gpbvp/multi_index.hpp"

namespace gpbvp {

/// One coefficient-weighted partial derivative: coefficient(x) * d^alpha.
struct OperatorTerm {
  MultiIndex alpha;
  Expression coefficient;
};

/// A k-th order linear differential operator
///
///   A[u](x) = sum_{|alpha| <= k} A_alpha(x) d^alpha u(x)
///
/// stored as a list of terms with distinct multi-indices (duplicates are
/// merged at construction by adding the coefficient expressions).
/// Immutable after construction; all operations are pure.
class LinearDiffOperator {
 public:
  LinearDiffOperator(int dimension, std::vector<OperatorTerm> terms);

  /// The order-0 operator with coefficient 1 (A[u] = u).
  static LinearDiffOperator identity(int dimension);

  int dimension() const { return dimension_; }

  /// max |alpha| over the terms.
  int order() const { return order_; }

  const std::vector<OperatorTerm>& terms() const { return terms_; }

  /// Copy with every coefficient multiplied by `factor`.
  LinearDiffOperator scaled(double factor) const;

  /// Termwise sum; dimensions must agree.
  friend LinearDiffOperator operator+(const LinearDiffOperator& a, const LinearDiffOperator& b);

 private:
  int dimension_;
  int order_;
  std::vector<OperatorTerm> terms_;
};

/// Result of the boundary-order sanity check.
struct BoundaryOrderCheck {
  bool ok;
  std::string warning;  // empty when ok
};

/// Checks order(boundary) <= order(interior) - 1. A violation yields a
/// non-fatal warning (the solve still proceeds); a dimension mismatch
/// throws ConfigError.
BoundaryOrderCheck check_boundary_order(const LinearDiffOperator& interior,
                                        const LinearDiffOperator& boundary);

/// sum_alpha A_alpha(x) d^alpha_x c(x, x'), the operator acting on the
/// first kernel argument only.
double apply_to_kernel(const LinearDiffOperator& op_x, const SEKernel& kernel,
                       std::span<const double> x, std::span<const double> xp);

/// sum_alpha sum_beta A_alpha(x) B_beta(x') d^alpha_x (d')^beta_x' c(x, x').
/// Coefficients of `op_x` are evaluated at x, those of `op_xp` at x'.
double apply_to_kernel(const LinearDiffOperator& op_x, const LinearDiffOperator& op_xp,
                       const SEKernel& kernel, std::span<const double> x,
                       std::span<const double> xp);

inline double apply_to_kernel(const LinearDiffOperator& op_x, const SEKernel& kernel,
                              std::initializer_list<double> x,
                              std::initializer_list<double> xp) {
  return apply_to_kernel(op_x, kernel, std::span<const double>(x.begin(), x.size()),
                         std::span<const double>(xp.begin(), xp.size()));
}

inline double apply_to_kernel(const LinearDiffOperator& op_x, const LinearDiffOperator& op_xp,
                              const SEKernel& kernel, std::initializer_list<double> x,
                              std::initializer_list<double> xp) {
  return apply_to_kernel(op_x, op_xp, kernel, std::span<const double>(x.begin(), x.size()),
                         std::span<const double>(xp.begin(), xp.size()));
}

}  // namespace gpbvp
