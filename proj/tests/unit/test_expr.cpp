#include <cmath>
#include <numbers>
#include <random>

#include "bmean/expr.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bmean;
using doctest::Approx;

TEST_CASE("parse builds the expected tree") {
  const Expr e = parse("x^2 + 1");
  REQUIRE(e.root().kind == NodeKind::Add);
  CHECK(e.root().lhs->kind == NodeKind::Pow);
  CHECK(e.root().lhs->lhs->kind == NodeKind::Variable);
  CHECK(e.root().lhs->rhs->number == 2.0);
  CHECK(e.root().rhs->number == 1.0);
  CHECK(e(2.0) == 5.0);
}

TEST_CASE("operator precedence and associativity") {
  CHECK(parse("8 - 3 - 2")(0.0) == 3.0);
  CHECK(parse("8 / 4 / 2")(0.0) == 1.0);
  CHECK(parse("2 ^ 3 ^ 2")(0.0) == 512.0);
  CHECK(parse("1 + 2 * 3 ^ 2")(0.0) == 19.0);
  CHECK(parse("2 * -x")(3.0) == -6.0);
  CHECK(parse("x ^ -2")(2.0) == 0.25);
  // Unary minus binds to the atom: -x^2 is (-x)^2.
  CHECK(parse("-x^2")(3.0) == 9.0);
  CHECK(parse("-(x^2)")(3.0) == -9.0);
  CHECK(parse("1.5e2 + .5 + 2E-1")(0.0) == Approx(150.7));
  CHECK(parse("pi")(0.0) == std::numbers::pi);
  CHECK(parse("e")(0.0) == std::numbers::e);
}

TEST_CASE("sin/cos agrees with tan") {
  CHECK(parse("sin(x)/cos(x)")(0.5) == Approx(std::tan(0.5)).epsilon(1e-15));
}

TEST_CASE("syntax errors report the offending position") {
  try {
    parse("2*x + + 3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("   "), ParseError);
  CHECK_THROWS_AS(parse("(x + 1"), ParseError);
  CHECK_THROWS_AS(parse("x + 1)"), ParseError);
  CHECK_THROWS_AS(parse("sin x"), ParseError);
  CHECK_THROWS_AS(parse("--x"), ParseError);
  CHECK_THROWS_AS(parse("2 $ 3"), ParseError);
}

TEST_CASE("unknown identifiers and extra variables are rejected") {
  try {
    parse("x + y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("unknown identifier 'y'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("log(x)"), ParseError);
}

TEST_CASE("eval_dual on closed forms") {
  const Dual2 s = eval_dual(parse("sin(x)"), 0.0);
  CHECK(s.v0 == 0.0);
  CHECK(s.v1 == 1.0);
  CHECK(s.v2 == 0.0);

  // (x e^x)' = e^x (1 + x), (x e^x)'' = e^x (2 + x).
  const Dual2 xe = eval_dual(parse("x*exp(x)"), 1.0);
  const double e = std::numbers::e;
  CHECK(xe.v0 == Approx(e).epsilon(1e-15));
  CHECK(xe.v1 == Approx(2 * e).epsilon(1e-15));
  CHECK(xe.v2 == Approx(3 * e).epsilon(1e-15));
}

TEST_CASE("domain violations name the subexpression") {
  try {
    eval_dual(parse("1 + ln(x)"), -1.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.subexpression() == "ln(x)");
    CHECK(e.at() == -1.0);
  }
  CHECK_THROWS_AS(eval_dual(parse("sqrt(x - 2)"), 1.0), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("1/(x - 1)"), 1.0), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("x^0.5"), -1.0), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("atanh(x)"), 1.0), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("asin(x)"), -1.5), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("abs(x)"), 0.0), DomainError);
  CHECK_THROWS_AS(eval_dual(parse("x^-1"), 0.0), DomainError);
  CHECK_NOTHROW(eval_dual(parse("x^3"), -2.0));
  CHECK(eval_dual(parse("x^3"), -2.0).v0 == -8.0);
}

TEST_CASE("integer powers use exact repeated multiplication") {
  const Dual2 p = eval_dual(parse("x^5"), 3.0);
  CHECK(p.v0 == 243.0);
  CHECK(p.v1 == 405.0);
  CHECK(p.v2 == 540.0);
  const Dual2 n = eval_dual(parse("x^-2"), 2.0);
  CHECK(n.v0 == 0.25);
  CHECK(n.v1 == Approx(-0.25));
  CHECK(n.v2 == Approx(0.375));
}

TEST_CASE("non-integer and variable exponents") {
  const Dual2 xx = eval_dual(parse("x^x"), 2.0);
  // d/dx x^x = x^x (ln x + 1); second = x^x ((ln x + 1)^2 + 1/x).
  const double l = std::log(2.0) + 1.0;
  CHECK(xx.v0 == Approx(4.0));
  CHECK(xx.v1 == Approx(4.0 * l));
  CHECK(xx.v2 == Approx(4.0 * (l * l + 0.5)));
}

TEST_CASE("every elementary function matches finite differences") {
  const char* sources[] = {"sin(x)",  "cos(x)",  "tan(x)",  "sinh(x)", "cosh(x)",
                           "tanh(x)", "exp(x)",  "ln(x)",   "sqrt(x)", "atan(x)",
                           "atanh(x/2)", "asin(x/2)", "abs(x - 3)", "x^1.5", "2^x"};
  for (const char* src : sources) {
    CAPTURE(src);
    const Expr e = parse(src);
    for (double x : {0.3, 0.7, 1.1}) {
      const Dual2 d = eval_dual(e, x);
      const auto f = [&](double s) { return e(s); };
      CHECK(d.v0 == Approx(f(x)).epsilon(1e-15));
      CHECK(d.v1 == Approx(testing::central_first(f, x)).epsilon(1e-8));
      CHECK(d.v2 == Approx(testing::central_second(f, x)).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: random quartic derivatives match central differences") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  std::uniform_int_distribution<int> degree(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = parse(testing::random_polynomial(rng, degree(rng)));
    const double x = xs(rng);
    const auto f = [&](double s) { return e(s); };
    const Dual2 d = eval_dual(e, x);
    const double fd1 = testing::central_first(f, x, 1e-5);
    const double fd2 = testing::central_second(f, x);
    CAPTURE(e.to_string());
    CAPTURE(x);
    CHECK(std::abs(d.v1 - fd1) <= 1e-6 * std::max(1.0, std::abs(fd1)));
    CHECK(std::abs(d.v2 - fd2) <= 1e-6 * std::max(1.0, std::abs(fd2)));
  }
}

TEST_CASE("property: chain rule for sin(x^2)") {
  const Expr e = parse("sin(x^2)");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double x = xs(rng);
    const double x2 = x * x;
    const Dual2 d = eval_dual(e, x);
    CHECK(std::abs(d.v0 - std::sin(x2)) <= 1e-12);
    CHECK(std::abs(d.v1 - 2.0 * x * std::cos(x2)) <= 1e-12);
    CHECK(std::abs(d.v2 - (2.0 * std::cos(x2) - 4.0 * x2 * std::sin(x2))) <= 1e-12);
  }
}

TEST_CASE("property: print then parse is the identity on structure") {
  const char* sources[] = {"x^2 + 1",       "-x^2",          "-(x^2)",       "2*-x",
                           "x^-2",          "2^3^2",         "(2^3)^2",      "8 - (3 - 2)",
                           "8 - 3 - 2",     "a",             "sin(x)/cos(x)", "x/(2*x)",
                           "x/2*x",         "-(x + 1)*3",    "exp(-x)*cosh(x/3 + pi)",
                           "1e-05*x",       "0.1 + 0.2",     "-(-x)",        "(x - 1)/(x + 1)^0.5"};
  for (const char* src : sources) {
    CAPTURE(src);
    Expr e;
    try {
      e = parse(src);
    } catch (const ParseError&) {
      continue;  // "a" is rejected by design
    }
    const std::string printed = e.to_string();
    CAPTURE(printed);
    CHECK(parse(printed) == e);
    CHECK(parse(printed).to_string() == printed);
  }
}

TEST_CASE("builders and substitution round-trip through the printer") {
  const Expr w = parse("x + 0.2*x^3");
  const Expr f = ast::div(ast::call(Func::Sin, ast::mul(ast::number(1.5), w)), ast::number(-1.5));
  CHECK(parse(f.to_string()) == f);
  CHECK(f(0.4) == Approx(std::sin(1.5 * (0.4 + 0.2 * 0.064)) / -1.5));

  const Expr sq = ast::substitute(parse("x^2 - x"), parse("x + 1"));
  CHECK(sq.to_string() == "(x + 1)^2 - (x + 1)");
  CHECK(sq(2.0) == 6.0);
}
