#include "gpbvp/expr.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace gpbvp {
namespace detail {

enum class UnaryOp { neg };
enum class BinaryOp { add, sub, mul, div, pow };
enum class Func { sin, cos, tan, atan, exp, log, sqrt, abs, tanh };

constexpr std::array<std::string_view, 9> kFuncNames = {
    "sin", "cos", "tan", "atan", "exp", "log", "sqrt", "abs", "tanh"};

struct ExprNode {
  struct Constant {
    double value;
  };
  struct Variable {
    int index;  // 0-based
  };
  struct Unary {
    UnaryOp op;
    std::shared_ptr<const ExprNode> arg;
  };
  struct Binary {
    BinaryOp op;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
  };
  struct Call {
    Func func;
    std::shared_ptr<const ExprNode> arg;
  };

  std::variant<Constant, Variable, Unary, Binary, Call> node;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_constant(double v) {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Constant{v}});
}

double eval_node(const ExprNode& n, std::span<const double> x);

double eval_call(Func f, double a) {
  switch (f) {
    case Func::sin:
      return std::sin(a);
    case Func::cos:
      return std::cos(a);
    case Func::tan:
      return std::tan(a);
    case Func::atan:
      return std::atan(a);
    case Func::exp:
      return std::exp(a);
    case Func::log:
      if (a <= 0.0) throw EvalError("log of a non-positive value");
      return std::log(a);
    case Func::sqrt:
      if (a < 0.0) throw EvalError("sqrt of a negative value");
      return std::sqrt(a);
    case Func::abs:
      return std::fabs(a);
    case Func::tanh:
      return std::tanh(a);
  }
  throw EvalError("unknown function");
}

double eval_node(const ExprNode& n, std::span<const double> x) {
  struct Visitor {
    std::span<const double> x;
    double operator()(const ExprNode::Constant& c) const { return c.value; }
    double operator()(const ExprNode::Variable& v) const {
      if (v.index < 0 || static_cast<std::size_t>(v.index) >= x.size())
        throw EvalError("variable x" + std::to_string(v.index + 1) +
                        " out of range for a point of dimension " + std::to_string(x.size()));
      return x[static_cast<std::size_t>(v.index)];
    }
    double operator()(const ExprNode::Unary& u) const { return -eval_node(*u.arg, x); }
    double operator()(const ExprNode::Binary& b) const {
      double lhs = eval_node(*b.lhs, x);
      double rhs = eval_node(*b.rhs, x);
      switch (b.op) {
        case BinaryOp::add:
          return lhs + rhs;
        case BinaryOp::sub:
          return lhs - rhs;
        case BinaryOp::mul:
          return lhs * rhs;
        case BinaryOp::div:
          if (rhs == 0.0) throw EvalError("division by zero");
          return lhs / rhs;
        case BinaryOp::pow: {
          double r = std::pow(lhs, rhs);
          if (std::isnan(r) && !std::isnan(lhs) && !std::isnan(rhs))
            throw EvalError("invalid power (negative base with non-integer exponent)");
          if (lhs == 0.0 && rhs < 0.0) throw EvalError("zero raised to a negative power");
          return r;
        }
      }
      throw EvalError("unknown operator");
    }
    double operator()(const ExprNode::Call& c) const {
      return eval_call(c.func, eval_node(*c.arg, x));
    }
  };
  return std::visit(Visitor{x}, n.node);
}

void print_node(const ExprNode& n, std::string& out) {
  struct Visitor {
    std::string& out;
    void operator()(const ExprNode::Constant& c) const {
      std::array<char, 32> buf;
      auto res = std::to_chars(buf.data(), buf.data() + buf.size(), c.value);
      out.append(buf.data(), res.ptr);
    }
    void operator()(const ExprNode::Variable& v) const {
      out += 'x';
      out += static_cast<char>('1' + v.index);
    }
    void operator()(const ExprNode::Unary& u) const {
      out += "(-";
      print_node(*u.arg, out);
      out += ')';
    }
    void operator()(const ExprNode::Binary& b) const {
      static constexpr std::array<char, 5> ops = {'+', '-', '*', '/', '^'};
      out += '(';
      print_node(*b.lhs, out);
      out += ops[static_cast<std::size_t>(b.op)];
      print_node(*b.rhs, out);
      out += ')';
    }
    void operator()(const ExprNode::Call& c) const {
      out += kFuncNames[static_cast<std::size_t>(c.func)];
      out += '(';
      print_node(*c.arg, out);
      out += ')';
    }
  };
  std::visit(Visitor{out}, n.node);
}

int max_var_index(const ExprNode& n) {
  struct Visitor {
    int operator()(const ExprNode::Constant&) const { return -1; }
    int operator()(const ExprNode::Variable& v) const { return v.index; }
    int operator()(const ExprNode::Unary& u) const { return max_var_index(*u.arg); }
    int operator()(const ExprNode::Binary& b) const {
      return std::max(max_var_index(*b.lhs), max_var_index(*b.rhs));
    }
    int operator()(const ExprNode::Call& c) const { return max_var_index(*c.arg); }
  };
  return std::visit(Visitor{}, n.node);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.node.index() != b.node.index()) return false;
  struct Visitor {
    const ExprNode& other;
    bool operator()(const ExprNode::Constant& c) const {
      return std::bit_cast<std::uint64_t>(c.value) ==
             std::bit_cast<std::uint64_t>(std::get<ExprNode::Constant>(other.node).value);
    }
    bool operator()(const ExprNode::Variable& v) const {
      return v.index == std::get<ExprNode::Variable>(other.node).index;
    }
    bool operator()(const ExprNode::Unary& u) const {
      const auto& o = std::get<ExprNode::Unary>(other.node);
      return u.op == o.op && nodes_equal(*u.arg, *o.arg);
    }
    bool operator()(const ExprNode::Binary& bn) const {
      const auto& o = std::get<ExprNode::Binary>(other.node);
      return bn.op == o.op && nodes_equal(*bn.lhs, *o.lhs) && nodes_equal(*bn.rhs, *o.rhs);
    }
    bool operator()(const ExprNode::Call& c) const {
      const auto& o = std::get<ExprNode::Call>(other.node);
      return c.func == o.func && nodes_equal(*c.arg, *o.arg);
    }
  };
  return std::visit(Visitor{b}, a.node);
}

// Recursive-descent parser over the grammar in the header.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        lhs = binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        lhs = binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    if (accept('-')) {
      return std::make_shared<ExprNode>(ExprNode{ExprNode::Unary{UnaryOp::neg, parse_factor()}});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (accept('^')) {
      // right-associative: the exponent is a full factor
      return binary(BinaryOp::pow, base, parse_factor());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (accept('(')) {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' was not an exponent
      }
    }
    double value = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number literal");
    }
    return make_constant(value);
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      ++pos_;
    std::string_view name = src_.substr(start, pos_ - start);

    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '3') {
      return std::make_shared<ExprNode>(ExprNode{ExprNode::Variable{name[1] - '1'}});
    }
    for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
      if (name == kFuncNames[i]) {
        skip_ws();
        if (!accept('(')) {
          pos_ = start;
          fail("function '" + std::string(name) + "' takes exactly one parenthesized argument");
        }
        NodePtr arg = parse_expr();
        expect(')');
        return std::make_shared<ExprNode>(ExprNode{ExprNode::Call{static_cast<Func>(i), arg}});
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  static NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
    return std::make_shared<ExprNode>(ExprNode{ExprNode::Binary{op, std::move(lhs), std::move(rhs)}});
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

Expression::Expression(std::shared_ptr<const detail::ExprNode> root) : root_(std::move(root)) {}

Expression Expression::parse(std::string_view source) {
  return Expression(detail::Parser(source).parse());
}

Expression Expression::constant(double value) {
  if (!std::isfinite(value)) throw ConfigError("expression constants must be finite");
  return Expression(detail::make_constant(value));
}

Expression Expression::variable(int index) {
  if (index < 0 || index >= 3) throw ConfigError("variable index must be in [0, 3)");
  return Expression(
      std::make_shared<detail::ExprNode>(detail::ExprNode{detail::ExprNode::Variable{index}}));
}

double Expression::operator()(std::span<const double> x) const {
  return detail::eval_node(*root_, x);
}

std::string Expression::str() const {
  std::string out;
  detail::print_node(*root_, out);
  return out;
}

int Expression::min_dimension() const { return detail::max_var_index(*root_) + 1; }

bool Expression::same_ast(const Expression& other) const {
  return detail::nodes_equal(*root_, *other.root_);
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(std::make_shared<detail::ExprNode>(
      detail::ExprNode{detail::ExprNode::Binary{detail::BinaryOp::add, a.root_, b.root_}}));
}

Expression operator*(const Expression& a, const Expression& b) {
  return Expression(std::make_shared<detail::ExprNode>(
      detail::ExprNode{detail::ExprNode::Binary{detail::BinaryOp::mul, a.root_, b.root_}}));
}

Expression operator-(const Expression& a) {
  return Expression(std::make_shared<detail::ExprNode>(
      detail::ExprNode{detail::ExprNode::Unary{detail::UnaryOp::neg, a.root_}}));
}

}  // namespace gpbvp
