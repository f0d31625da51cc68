#include "bmean/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

namespace bmean {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

DomainError::DomainError(const std::string& message, std::string subexpression, double at)
    : std::runtime_error(message + " in '" + subexpression + "' at x=" + std::to_string(at)),
      subexpression_(std::move(subexpression)),
      at_(at) {}

namespace {

struct FuncEntry {
  std::string_view name;
  Func func;
};

constexpr std::array<FuncEntry, 13> kFuncs{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"atan", Func::Atan},
    {"atanh", Func::Atanh},
    {"asin", Func::Asin},
    {"abs", Func::Abs},
}};

NodePtr make_node(Node n) {
  n.has_variable = n.kind == NodeKind::Variable || (n.lhs && n.lhs->has_variable) ||
                   (n.rhs && n.rhs->has_variable);
  return std::make_shared<const Node>(std::move(n));
}

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  Node n;
  n.kind = kind;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make_node(std::move(n));
}

NodePtr make_unary(NodeKind kind, NodePtr child) {
  Node n;
  n.kind = kind;
  n.lhs = std::move(child);
  return make_node(std::move(n));
}

NodePtr make_number(double v) {
  Node n;
  n.kind = NodeKind::Number;
  n.number = v;
  return make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Lexer / recursive-descent parser

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;
  std::string_view text;
  double number = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    if (tok_.kind != Tok::End) fail("unexpected '" + std::string(tok_.text) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.pos); }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text = "end of input";
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    tok_.text = src_.substr(pos_, 1);
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '-': tok_.kind = Tok::Minus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '/': tok_.kind = Tok::Slash; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default: fail("unexpected character '" + std::string(1, c) + "'");
    }
    ++pos_;
  }

  void lex_number() {
    auto is_digit = [&](std::size_t i) {
      return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
    };
    std::size_t end = pos_;
    bool digits = false;
    while (is_digit(end)) ++end, digits = true;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (is_digit(end)) ++end, digits = true;
    }
    if (!digits) fail("malformed number");
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (is_digit(exp)) {
        while (is_digit(exp)) ++exp;
        end = exp;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + end, value);
    if (ec != std::errc{} || ptr != src_.data() + end || !std::isfinite(value))
      fail("malformed number");
    tok_.kind = Tok::Number;
    tok_.text = src_.substr(pos_, end - pos_);
    tok_.number = value;
    pos_ = end;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const NodeKind k = tok_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make_binary(k, lhs, parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const NodeKind k = tok_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = make_binary(k, lhs, parse_factor());
    }
    return lhs;
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (tok_.kind == Tok::Caret) {
      advance();
      return make_binary(NodeKind::Pow, base, parse_factor());
    }
    return base;
  }

  NodePtr parse_unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return make_unary(NodeKind::Negate, parse_atom());
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    switch (tok_.kind) {
      case Tok::Number: {
        NodePtr n = make_number(tok_.number);
        advance();
        return n;
      }
      case Tok::LParen: {
        advance();
        NodePtr inner = parse_expr();
        expect_rparen();
        return inner;
      }
      case Tok::Ident: return parse_identifier();
      case Tok::End: fail("unexpected end of input, expected an operand");
      default: fail("expected an operand, found '" + std::string(tok_.text) + "'");
    }
  }

  NodePtr parse_identifier() {
    const std::string_view name = tok_.text;
    const std::size_t at = tok_.pos;
    for (const auto& entry : kFuncs) {
      if (entry.name != name) continue;
      advance();
      if (tok_.kind != Tok::LParen)
        fail("expected '(' after function '" + std::string(name) + "'");
      advance();
      NodePtr arg = parse_expr();
      expect_rparen();
      Node n;
      n.kind = NodeKind::Call;
      n.func = entry.func;
      n.lhs = std::move(arg);
      return make_node(std::move(n));
    }
    Node n;
    if (name == "x") {
      n.kind = NodeKind::Variable;
    } else if (name == "pi") {
      n.kind = NodeKind::Constant;
      n.named = NamedConstant::Pi;
    } else if (name == "e") {
      n.kind = NodeKind::Constant;
      n.named = NamedConstant::E;
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", at);
    }
    advance();
    return make_node(std::move(n));
  }

  void expect_rparen() {
    if (tok_.kind != Tok::RParen) fail("expected ')'");
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Printer

int level(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Pow: return 3;
    case NodeKind::Negate: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string print_at(const Node& n, int required);

std::string print_node(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number: return format_number(n.number);
    case NodeKind::Variable: return "x";
    case NodeKind::Constant: return n.named == NamedConstant::Pi ? "pi" : "e";
    case NodeKind::Negate: return "-" + print_at(*n.lhs, 5);
    case NodeKind::Add: return print_at(*n.lhs, 1) + " + " + print_at(*n.rhs, 2);
    case NodeKind::Sub: return print_at(*n.lhs, 1) + " - " + print_at(*n.rhs, 2);
    case NodeKind::Mul: return print_at(*n.lhs, 2) + "*" + print_at(*n.rhs, 3);
    case NodeKind::Div: return print_at(*n.lhs, 2) + "/" + print_at(*n.rhs, 3);
    case NodeKind::Pow: return print_at(*n.lhs, 4) + "^" + print_at(*n.rhs, 3);
    case NodeKind::Call: return std::string(func_name(n.func)) + "(" + print_node(*n.lhs) + ")";
  }
  return {};
}

std::string print_at(const Node& n, int required) {
  std::string s = print_node(n);
  return level(n) < required ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_fail(const std::string& msg, const Node& n, const Dual2& x) {
  throw DomainError(msg, print_node(n), x.v0);
}

Dual2 eval_call(const Node& n, const Dual2& a, const Dual2& x) {
  switch (n.func) {
    case Func::Sin: return sin(a);
    case Func::Cos: return cos(a);
    case Func::Tan:
      if (std::cos(a.v0) == 0.0) domain_fail("tan at a pole", n, x);
      return tan(a);
    case Func::Sinh: return sinh(a);
    case Func::Cosh: return cosh(a);
    case Func::Tanh: return tanh(a);
    case Func::Exp: return exp(a);
    case Func::Ln:
      if (!(a.v0 > 0.0)) domain_fail("ln of a nonpositive argument", n, x);
      return log(a);
    case Func::Sqrt:
      if (!(a.v0 > 0.0)) domain_fail("sqrt of a nonpositive argument", n, x);
      return sqrt(a);
    case Func::Atan: return atan(a);
    case Func::Atanh:
      if (!(std::abs(a.v0) < 1.0)) domain_fail("atanh outside (-1,1)", n, x);
      return atanh(a);
    case Func::Asin:
      if (!(std::abs(a.v0) < 1.0)) domain_fail("asin outside (-1,1)", n, x);
      return asin(a);
    case Func::Abs:
      if (a.v0 == 0.0) domain_fail("abs is not differentiable at 0", n, x);
      return abs(a);
  }
  return {};
}

Dual2 eval_pow(const Node& n, const Dual2& x) {
  const Dual2 base = eval_node(*n.lhs, x);
  const Dual2 exponent = eval_node(*n.rhs, x);
  if (!n.rhs->has_variable) {
    const double e = exponent.v0;
    if (e == std::trunc(e) && std::abs(e) <= 1024.0) {
      if (base.v0 == 0.0 && e < 0.0) domain_fail("zero raised to a negative power", n, x);
      return ipow(base, static_cast<long long>(e));
    }
  }
  if (!(base.v0 > 0.0)) domain_fail("non-integer power of a nonpositive base", n, x);
  return pow(base, exponent);
}

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& entry : kFuncs)
    if (entry.func == f) return entry.name;
  return "?";
}

Dual2 eval_node(const Node& n, const Dual2& x) {
  switch (n.kind) {
    case NodeKind::Number: return Dual2::constant(n.number);
    case NodeKind::Variable: return x;
    case NodeKind::Constant:
      return Dual2::constant(n.named == NamedConstant::Pi ? std::numbers::pi : std::numbers::e);
    case NodeKind::Negate: return -eval_node(*n.lhs, x);
    case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeKind::Div: {
      const Dual2 num = eval_node(*n.lhs, x);
      const Dual2 den = eval_node(*n.rhs, x);
      if (den.v0 == 0.0) domain_fail("division by zero", n, x);
      return num / den;
    }
    case NodeKind::Pow: return eval_pow(n, x);
    case NodeKind::Call: return eval_call(n, eval_node(*n.lhs, x), x);
  }
  return {};
}

Dual2 eval_dual(const Expr& expr, double x) {
  const Dual2 r = eval_node(expr.root(), Dual2::variable(x));
  if (!std::isfinite(r.v0) || !std::isfinite(r.v1) || !std::isfinite(r.v2))
    throw DomainError("non-finite result", expr.to_string(), x);
  return r;
}

Dual2 Expr::eval_dual(double x) const { return bmean::eval_dual(*this, x); }

std::string Expr::to_string() const { return root_ ? print_node(*root_) : std::string{}; }

std::string print(const Node& node) { return print_node(node); }

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Number: return a.number == b.number;
    case NodeKind::Variable: return true;
    case NodeKind::Constant: return a.named == b.named;
    case NodeKind::Negate: return structurally_equal(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
    default: return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return structurally_equal(a.root(), b.root());
}

Expr parse(std::string_view source) {
  std::size_t first = 0;
  while (first < source.size() && std::isspace(static_cast<unsigned char>(source[first]))) ++first;
  if (first == source.size()) throw ParseError("empty expression", first);
  return Expr(Parser(source).parse_all());
}

namespace ast {

Expr number(double value) {
  if (std::signbit(value) && value != 0.0) return negate(Expr(make_number(-value)));
  return Expr(make_number(value == 0.0 ? 0.0 : value));
}

Expr variable() {
  Node n;
  n.kind = NodeKind::Variable;
  return Expr(make_node(std::move(n)));
}

Expr constant(NamedConstant c) {
  Node n;
  n.kind = NodeKind::Constant;
  n.named = c;
  return Expr(make_node(std::move(n)));
}

Expr negate(const Expr& a) { return Expr(make_unary(NodeKind::Negate, a.node())); }
Expr add(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Add, a.node(), b.node())); }
Expr sub(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Sub, a.node(), b.node())); }
Expr mul(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Mul, a.node(), b.node())); }
Expr div(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Div, a.node(), b.node())); }
Expr pow(const Expr& a, const Expr& b) { return Expr(make_binary(NodeKind::Pow, a.node(), b.node())); }

Expr call(Func f, const Expr& a) {
  Node n;
  n.kind = NodeKind::Call;
  n.func = f;
  n.lhs = a.node();
  return Expr(make_node(std::move(n)));
}

namespace {
NodePtr substitute_node(const NodePtr& n, const NodePtr& replacement) {
  if (!n->has_variable) return n;
  if (n->kind == NodeKind::Variable) return replacement;
  Node copy = *n;
  if (copy.lhs) copy.lhs = substitute_node(copy.lhs, replacement);
  if (copy.rhs) copy.rhs = substitute_node(copy.rhs, replacement);
  return make_node(std::move(copy));
}
}  // namespace

Expr substitute(const Expr& expr, const Expr& replacement) {
  return Expr(substitute_node(expr.node(), replacement.node()));
}

}  // namespace ast
}  // namespace bmean
