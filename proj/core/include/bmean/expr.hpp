#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bmean/dual.hpp"

namespace bmean {

/// Raised by parse() on malformed input. position() is the 0-based byte
/// offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised when an expression is evaluated outside its differentiable real
/// domain (log of a nonpositive number, division by zero, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& message, std::string subexpression, double at);
  const std::string& subexpression() const noexcept { return subexpression_; }
  double at() const noexcept { return at_; }

 private:
  std::string subexpression_;
  double at_;
};

enum class NodeKind { Number, Variable, Constant, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Atan, Atanh, Asin, Abs };

enum class NamedConstant { Pi, E };

std::string_view func_name(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One AST node. Nodes are immutable and shared between trees.
struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;  // Number: nonnegative literal
  Func func = Func::Sin;
  NamedConstant named = NamedConstant::Pi;
  NodePtr lhs;  // only child of Negate/Call, left operand of binary nodes
  NodePtr rhs;  // right operand of binary nodes
  bool has_variable = false;
};

/// A parsed one-variable expression in `x`. Cheap to copy; the tree is shared.
class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& node() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  /// Value, first and second derivative at x.
  Dual2 eval_dual(double x) const;
  /// Value only.
  double operator()(double x) const { return eval_dual(x).v0; }

  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

Expr parse(std::string_view source);

/// Evaluates a node on an arbitrary seeded dual input.
Dual2 eval_node(const Node& node, const Dual2& x);

Dual2 eval_dual(const Expr& expr, double x);

std::string print(const Node& node);

bool structurally_equal(const Node& a, const Node& b);

// Builders for programmatic construction. number() of a negative value
// produces Negate(Number) so that printing and re-parsing round-trips.
namespace ast {
Expr number(double value);
Expr variable();
Expr constant(NamedConstant c);
Expr negate(const Expr& a);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr pow(const Expr& a, const Expr& b);
Expr call(Func f, const Expr& a);
/// Replaces every occurrence of `x` in `expr` by `replacement`.
Expr substitute(const Expr& expr, const Expr& replacement);
}  // namespace ast

}  // namespace bmean
