#include "gpbvp/operators.hpp"

#include <algorithm>
#include <utility>

namespace gpbvp {

LinearDiffOperator::LinearDiffOperator(int dimension, std::vector<OperatorTerm> terms)
    : dimension_(dimension), order_(0) {
  if (dimension_ < 1 || dimension_ > 3)
    throw ConfigError("operator dimension must be in [1, 3]");
  if (terms.empty()) throw ConfigError("a differential operator needs at least one term");
  for (auto& term : terms) {
    if (term.alpha.dimension() != dimension_)
      throw ConfigError("operator term multi-index dimension mismatch");
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const OperatorTerm& t) { return t.alpha == term.alpha; });
    if (it == terms_.end()) {
      terms_.push_back(std::move(term));
    } else {
      it->coefficient = it->coefficient + term.coefficient;
    }
  }
  for (const auto& term : terms_) order_ = std::max(order_, term.alpha.order());
}

LinearDiffOperator LinearDiffOperator::identity(int dimension) {
  return LinearDiffOperator(dimension,
                            {OperatorTerm{MultiIndex::zero(dimension), Expression::constant(1.0)}});
}

LinearDiffOperator LinearDiffOperator::scaled(double factor) const {
  std::vector<OperatorTerm> scaled_terms;
  scaled_terms.reserve(terms_.size());
  for (const auto& term : terms_)
    scaled_terms.push_back({term.alpha, Expression::constant(factor) * term.coefficient});
  return LinearDiffOperator(dimension_, std::move(scaled_terms));
}

LinearDiffOperator operator+(const LinearDiffOperator& a, const LinearDiffOperator& b) {
  if (a.dimension() != b.dimension())
    throw ConfigError("cannot add operators of different dimensions");
  std::vector<OperatorTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return LinearDiffOperator(a.dimension(), std::move(terms));
}

BoundaryOrderCheck check_boundary_order(const LinearDiffOperator& interior,
                                        const LinearDiffOperator& boundary) {
  if (interior.dimension() != boundary.dimension())
    throw ConfigError("interior and boundary operators have different dimensions");
  if (boundary.order() <= interior.order() - 1) return {true, ""};
  return {false, "boundary operator order " + std::to_string(boundary.order()) +
                     " is not below the interior operator order " +
                     std::to_string(interior.order())};
}

double apply_to_kernel(const LinearDiffOperator& op_x, const SEKernel& kernel,
                       std::span<const double> x, std::span<const double> xp) {
  if (op_x.dimension() != kernel.dimension())
    throw ConfigError("operator and kernel dimensions differ");
  const MultiIndex beta = MultiIndex::zero(kernel.dimension());
  double sum = 0.0;
  for (const auto& term : op_x.terms())
    sum += term.coefficient(x) * kernel.derivative(term.alpha, beta, x, xp);
  return sum;
}

double apply_to_kernel(const LinearDiffOperator& op_x, const LinearDiffOperator& op_xp,
                       const SEKernel& kernel, std::span<const double> x,
                       std::span<const double> xp) {
  if (op_x.dimension() != kernel.dimension() || op_xp.dimension() != kernel.dimension())
    throw ConfigError("operator and kernel dimensions differ");
  double sum = 0.0;
  for (const auto& ta : op_x.terms()) {
    const double ca = ta.coefficient(x);
    for (const auto& tb : op_xp.terms())
      sum += ca * tb.coefficient(xp) * kernel.derivative(ta.alpha, tb.alpha, x, xp);
  }
  return sum;
}

}  // namespace gpbvp
