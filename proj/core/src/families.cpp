#include "bmean/families.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "bmean/mean.hpp"
#include "bmean/quadrature.hpp"

namespace bmean {

namespace {

constexpr double kPositivityMargin = 1e-6;

void check_generator_w(double alpha, const Function& w, const OpenInterval& domain) {
  require_valid(quasiarithmetic_pair(w, domain));
  if (alpha >= 0.0) return;
  double sup = 0.0;
  for (double x : core_nodes(domain, kDefaultNodes)) sup = std::max(sup, std::abs(w.value(x)));
  sup = std::max({sup, std::abs(w.value(domain.core_lo())), std::abs(w.value(domain.core_hi()))});
  const double limit = std::numbers::pi / 2.0 - kPositivityMargin;
  if (std::sqrt(-alpha) * sup >= limit) {
    std::ostringstream os;
    os << "family alpha=" << alpha << ": sqrt(-alpha)*sup|w| = " << std::sqrt(-alpha) * sup
       << " leaves the positivity window (< " << limit << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace

GeneratorPair build_family_pair(double alpha, const Expr& w, const OpenInterval& domain) {
  check_generator_w(alpha, Function(w), domain);
  Expr f, g;
  if (alpha == 0.0) {
    f = w;
    g = ast::number(1.0);
  } else {
    const double r = std::sqrt(std::abs(alpha));
    const Expr arg = r == 1.0 ? w : ast::mul(ast::number(r), w);
    const bool trig = alpha < 0.0;
    f = ast::call(trig ? Func::Sin : Func::Sinh, arg);
    if (r != 1.0) f = ast::div(f, ast::number(r));
    g = ast::call(trig ? Func::Cos : Func::Cosh, arg);
  }
  GeneratorPair pair(Function(f), Function(g), domain);
  require_valid(pair);
  return pair;
}

GeneratorPair build_family_pair(double alpha, const Function& w, const OpenInterval& domain) {
  check_generator_w(alpha, w, domain);
  std::ostringstream tag;
  tag.precision(17);
  tag << alpha;
  const std::string suffix = "_{" + tag.str() + "}(" + w.label() + ")";
  Function f([w, alpha](double x) { return s_alpha(alpha, w(x)); }, "S" + suffix);
  Function g([w, alpha](double x) { return c_alpha(alpha, w(x)); }, "C" + suffix);
  GeneratorPair pair(std::move(f), std::move(g), domain);
  require_valid(pair);
  return pair;
}

SampledFunction canonical_w(const GeneratorPair& pair, int nodes, double tolerance) {
  if (nodes < 3 || nodes % 2 == 0)
    throw std::invalid_argument("canonical_w needs an odd node count >= 3");
  const OpenInterval& dom = pair.domain();
  const double a = dom.core_lo();
  const double b = dom.core_hi();
  const int segments = nodes - 1;
  std::vector<double> x(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) x[static_cast<std::size_t>(i)] = a + (b - a) * i / segments;
  const std::size_t mid = static_cast<std::size_t>(segments / 2);
  x[mid] = 0.5 * (a + b);

  const std::function<double(double)> integrand = [&pair](double s) { return pair.wronskian(s); };
  const double seg_tol = tolerance / segments;
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = mid; i + 1 < x.size(); ++i)
    y[i + 1] = y[i] + adaptive_simpson(integrand, x[i], x[i + 1], seg_tol);
  for (std::size_t i = mid; i > 0; --i)
    y[i - 1] = y[i] - adaptive_simpson(integrand, x[i - 1], x[i], seg_tol);

  std::vector<double> slopes(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) slopes[i] = pair.wronskian(x[i]);
  return SampledFunction(dom, std::move(x), std::move(y), std::move(slopes), true);
}

}  // namespace bmean
