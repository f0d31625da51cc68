#include <cmath>
#include <random>

#include "bmean/decide.hpp"
#include "bmean/mean.hpp"
#include "bmean/reduction.hpp"
#include "doctest.h"

using namespace bmean;
using doctest::Approx;

namespace {

GeneratorPair P(const char* f, const char* g, double lo, double hi) {
  return GeneratorPair::from_strings(f, g, lo, hi);
}

double max_diff(const Function& a, const std::function<double(double)>& b, const OpenInterval& J) {
  double worst = 0.0;
  for (double u : core_nodes(J, 41)) worst = std::max(worst, std::abs(a.value(u) - b(u)));
  return worst;
}

}  // namespace

TEST_CASE("identity reduction") {
  const GeneratorPair a = P("x", "1", 0, 1);
  const ReducedProblem r = reduce_problem(a, a);
  CHECK(r.J.lo() == Approx(0.001));
  CHECK(r.J.hi() == Approx(0.999));
  CHECK(max_diff(r.p, [](double) { return 1.0; }, r.J) <= 1e-14);
  CHECK(max_diff(r.q, [](double u) { return u; }, r.J) <= 1e-13);
  CHECK(max_diff(r.phi, [](double u) { return u; }, r.J) <= 1e-13);
  CHECK(max_diff(r.psi, [](double) { return 1.0; }, r.J) <= 1e-14);
}

TEST_CASE("trigonometric reductions") {
  const GeneratorPair sc = P("sin(x)", "cos(x)", -1.3, 1.3);
  const auto p = [](double u) { return 1.0 / std::sqrt(1.0 + u * u); };
  const ReducedProblem r = reduce_problem(sc, sc);
  CHECK(r.J.lo() == Approx(std::tan(sc.domain().core_lo())));
  CHECK(r.J.hi() == Approx(std::tan(sc.domain().core_hi())));
  CHECK(max_diff(r.p, p, r.J) <= 1e-12);
  CHECK(max_diff(r.q, [&](double u) { return u * p(u); }, r.J) <= 1e-12);
  CHECK(max_diff(r.phi, [&](double u) { return u * p(u); }, r.J) <= 1e-12);
  CHECK(max_diff(r.psi, p, r.J) <= 1e-12);

  const ReducedProblem m = reduce_problem(P("x", "1", -1.3, 1.3), sc);
  CHECK(max_diff(m.p, p, m.J) <= 1e-12);
  CHECK(max_diff(m.phi, [](double u) { return std::atan(u); }, m.J) <= 1e-12);
  CHECK(max_diff(m.psi, [](double) { return 1.0; }, m.J) <= 1e-14);
}

TEST_CASE("composed derivatives follow the inverse-function rule") {
  const GeneratorPair sc = P("sin(x)", "cos(x)", -1.3, 1.3);
  const ReducedProblem m = reduce_problem(P("x", "1", -1.3, 1.3), sc);
  for (double u : {-2.0, 0.0, 0.5, 3.0}) {
    // phi = atan: phi' = 1/(1+u^2), phi'' = -2u/(1+u^2)^2.
    const Dual2 d = m.phi(u);
    CHECK(d.v1 == Approx(1.0 / (1 + u * u)).epsilon(1e-12));
    CHECK(d.v2 == Approx(-2 * u / ((1 + u * u) * (1 + u * u))).epsilon(1e-10));
    // p = (1+u^2)^{-1/2}: p' = -u (1+u^2)^{-3/2}.
    CHECK(m.p(u).v1 == Approx(-u * std::pow(1 + u * u, -1.5)).epsilon(1e-10));
  }
}

TEST_CASE("q/p is the identity and the substitution chain holds") {
  const GeneratorPair fg = P("x", "1", -1.3, 1.3);
  const GeneratorPair hk = P("sin(x)", "cos(x)", -1.3, 1.3);
  const ReducedProblem r = reduce_problem(fg, hk);
  for (double u : core_nodes(r.J, 31)) CHECK(r.q.value(u) / r.p.value(u) == Approx(u).epsilon(1e-13));
  CHECK(substitution_residual(r, hk, 15) <= 1e-9);
  CHECK(substitution_residual(reduce_problem(P("x^2", "x", 0.5, 4), P("exp(x)", "1 + x", 0.5, 4)),
                              P("exp(x)", "1 + x", 0.5, 4), 15) <= 1e-9);
}

TEST_CASE("reduce_problem validates inputs") {
  CHECK_THROWS_AS(reduce_problem(P("x^2", "1", -1, 1), P("x", "1", -1, 1)), ValidationError);
  CHECK_THROWS(reduce_problem(P("x", "1", 0, 1), P("x", "1", 0, 2)));
}

TEST_CASE("recover_weight closed forms") {
  const MeanOracle arith = [](double u, double v) { return 0.5 * (u + v); };
  CHECK(recover_weight(arith, 0.9, 1.0, 0.2) == Approx(1.0));
  const MeanOracle tanmean = [](double u, double v) {
    return std::tan(0.5 * (std::atan(u) + std::atan(v)));
  };
  CHECK(recover_weight(tanmean, 0.0, 1.0, 1.0) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(recover_weight(arith, 0.5, 1.0, 0.5), std::domain_error);
}

TEST_CASE("property: weight round trip") {
  const char* weights[] = {"1/sqrt(1 + x^2)", "exp(x)", "1 + x^2", "2"};
  std::mt19937_64 rng(99);
  for (const char* src : weights) {
    const Expr p = parse(src);
    const OpenInterval J(-1.5, 1.5);
    const GeneratorPair qp(ast::mul(ast::variable(), p), p, J);
    REQUIRE(validate_pair(qp).ok);
    const RatioRange range = ratio_range(qp);
    const MeanOracle mean = [&](double u, double v) { return bajraktarevic(qp, range, u, v); };
    std::uniform_real_distribution<double> us(J.core_lo(), J.core_hi());
    for (double v0 : {-0.4, 1.1}) {
      int done = 0;
      while (done < 50) {
        const double u = us(rng);
        if (std::abs(u - v0) < 1e-3 * J.width()) continue;
        ++done;
        CAPTURE(src);
        CAPTURE(u);
        const double got = recover_weight(mean, v0, p(v0), u);
        CHECK(std::abs(got - p(u)) <= 1e-8 * std::abs(p(u)));
      }
    }
  }
}

TEST_CASE("property: reduction preserves the equality verdict") {
  struct Case {
    const char *f, *g, *h, *k;
    double lo, hi;
  };
  const Case cases[] = {
      {"x", "1", "sin(x)", "cos(x)", -1.2, 1.2},
      {"sin(x)", "cos(x)", "sinh(x)", "cosh(x)", -1.2, 1.2},
      {"x", "1", "2*x + 3", "x + 2", 0.5, 4},
      {"x", "1", "x^2", "x", 0.5, 4},
  };
  for (const auto& c : cases) {
    const GeneratorPair fg = P(c.f, c.g, c.lo, c.hi), hk = P(c.h, c.k, c.lo, c.hi);
    const ReducedProblem r = reduce_problem(fg, hk);
    CAPTURE(c.f);
    CAPTURE(c.h);
    CHECK(means_equal_on_grid(fg, hk).equal == means_equal_on_grid(r.qp(), r.phi_psi()).equal);
  }
}
