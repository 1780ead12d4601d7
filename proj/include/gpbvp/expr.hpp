#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "gpbvp/errors.hpp"

namespace gpbvp {

namespace detail {
struct ExprNode;
}

/// An immutable scalar expression of the spatial coordinates x1, x2, x3.
///
/// Expressions are parsed from text (see `parse`) and evaluated at points
/// in R^d. They hold coefficient functions, source terms and boundary data
/// of a problem description. Copies share the underlying AST; evaluation
/// is pure and safe to call concurrently.
class Expression {
 public:
  /// Parses `source` according to the grammar
  ///
  ///   expr   := term (('+'|'-') term)*
  ///   term   := factor (('*'|'/') factor)*
  ///   factor := '-' factor | power
  ///   power  := atom ('^' factor)?
  ///   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
  ///
  /// `^` binds tighter than unary minus, which binds tighter than `*` `/`,
  /// which bind tighter than `+` `-`; `^` is right-associative. Known
  /// functions: sin cos tan atan exp log sqrt abs tanh. Variables are
  /// x1, x2, x3. Throws ParseError with the byte offset on bad input.
  static Expression parse(std::string_view source);

  /// A constant expression; `value` must be finite.
  static Expression constant(double value);

  /// The coordinate x{index+1}; index in [0, 3).
  static Expression variable(int index);

  /// Value of the expression at `x`. Every variable in the expression must
  /// have index < x.size(). Throws EvalError at mathematical singularities
  /// (division by zero, log of a non-positive value, sqrt of a negative
  /// value, invalid powers); never silently returns NaN.
  double operator()(std::span<const double> x) const;

  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  /// Fully parenthesized text form. Re-parsing it yields an expression that
  /// evaluates bit-identically at every point.
  std::string str() const;

  /// 1 + the largest variable index used, i.e. the minimum dimension of a
  /// point this expression can be evaluated at. 0 for constants.
  int min_dimension() const;

  /// Structural equality (same AST, constants compared bitwise).
  bool same_ast(const Expression& other) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

 private:
  explicit Expression(std::shared_ptr<const detail::ExprNode> root);
  std::shared_ptr<const detail::ExprNode> root_;
};

}  // namespace gpbvp
