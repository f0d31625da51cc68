#include "bmean/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bmean {

OpenInterval::OpenInterval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("interval endpoints must be finite");
  if (!(lo < hi)) throw std::invalid_argument("interval requires lo < hi");
}

std::vector<double> chebyshev_nodes(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("chebyshev_nodes: n must be positive");
  std::vector<double> nodes(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // cos runs from ~1 down to ~-1; fill back to front for increasing order.
  for (int k = 0; k < n; ++k) {
    const double c = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
    nodes[static_cast<std::size_t>(n - 1 - k)] = mid + half * c;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = mid;
  return nodes;
}

std::vector<double> core_nodes(const OpenInterval& domain, int n) {
  return chebyshev_nodes(domain.core_lo(), domain.core_hi(), n);
}

Function::Function(Expr expr)
    : eval_([expr](double x) { return expr.eval_dual(x); }),
      label_(expr.to_string()),
      expr_(std::move(expr)) {}

Function::Function(Evaluator eval, std::string label)
    : eval_(std::move(eval)), label_(std::move(label)) {}

GeneratorPair::GeneratorPair(Function f, Function g, OpenInterval domain)
    : f_(std::move(f)), g_(std::move(g)), domain_(domain) {}

GeneratorPair GeneratorPair::from_strings(const std::string& f, const std::string& g, double lo,
                                          double hi) {
  return GeneratorPair(Function(parse(f)), Function(parse(g)), OpenInterval(lo, hi));
}

double GeneratorPair::wronskian(double x) const {
  const Dual2 fd = f_(x);
  const Dual2 gd = g_(x);
  return fd.v1 * gd.v0 - fd.v0 * gd.v1;
}

ValidationReport validate_pair(const GeneratorPair& pair, int n_samples, double floor) {
  if (n_samples < 8) throw std::invalid_argument("validate_pair needs at least 8 samples");
  ValidationReport report;
  report.floor = floor;
  report.min_g = INFINITY;
  report.min_abs_wronskian = INFINITY;
  bool saw_pos = false;
  bool saw_neg = false;
  for (double x : core_nodes(pair.domain(), n_samples)) {
    const Dual2 fd = pair.f()(x);
    const Dual2 gd = pair.g()(x);
    const double w = fd.v1 * gd.v0 - fd.v0 * gd.v1;
    report.min_g = std::min(report.min_g, gd.v0);
    report.min_abs_wronskian = std::min(report.min_abs_wronskian, std::abs(w));
    saw_pos |= w > 0.0;
    saw_neg |= w < 0.0;
    ++report.samples_used;
  }
  report.wronskian_sign = saw_pos && !saw_neg ? 1 : (saw_neg && !saw_pos ? -1 : 0);
  if (!(report.min_g > floor)) {
    report.reason = "g is not positive on the core (min g = " + std::to_string(report.min_g) + ")";
  } else if (report.wronskian_sign == 0) {
    report.reason = "Wronskian changes sign: f/g is not strictly monotone";
  } else if (!(report.min_abs_wronskian > floor)) {
    report.reason = "Wronskian falls below the validation floor";
  }
  report.ok = report.reason.empty();
  return report;
}

void require_valid(const GeneratorPair& pair, int n_samples) {
  const ValidationReport r = validate_pair(pair, n_samples);
  if (!r.ok) throw ValidationError("invalid generator pair (" + pair.f().label() + ", " +
                                   pair.g().label() + "): " + r.reason);
}

RatioRange ratio_range(const GeneratorPair& pair) {
  const double ra = pair.ratio(pair.domain().core_lo()).v0;
  const double rb = pair.ratio(pair.domain().core_hi()).v0;
  return {std::min(ra, rb), std::max(ra, rb), rb > ra};
}

double ratio_inverse(const GeneratorPair& pair, double t) {
  return ratio_inverse(pair, ratio_range(pair), t);
}

double ratio_inverse(const GeneratorPair& pair, const RatioRange& range, double t) {
  const double slack = 1e-12 * (1.0 + std::abs(t));
  if (!(t >= range.min - slack && t <= range.max + slack))
    throw RangeError("value " + std::to_string(t) + " outside the attained ratio range [" +
                     std::to_string(range.min) + ", " + std::to_string(range.max) + "]");
  t = std::clamp(t, range.min, range.max);

  return invert_monotone([&pair](double x) { return pair.ratio(x); }, pair.domain().core_lo(),
                         pair.domain().core_hi(), t, range.increasing);
}

double invert_monotone(const std::function<Dual2(double)>& fn, double lo, double hi, double t,
                       bool increasing) {
  // G(x) = s*(fn(x) - t) is increasing; keep G(lo) <= 0 <= G(hi).
  const double s = increasing ? 1.0 : -1.0;
  double x = 0.5 * (lo + hi);
  double step_old = hi - lo;
  double step = step_old;
  for (int it = 0; it < 400; ++it) {
    const Dual2 r = fn(x);
    const double g = s * (r.v0 - t);
    const double dg = s * r.v1;
    if (g == 0.0) return x;
    if (g < 0.0)
      lo = x;
    else
      hi = x;
    const double newton = x - g / dg;
    const bool use_newton = dg > 0.0 && std::isfinite(newton) && newton > lo && newton < hi &&
                            std::abs(2.0 * g) <= std::abs(step_old * dg);
    step_old = step;
    if (use_newton) {
      step = x - newton;
      x = newton;
    } else {
      step = 0.5 * (hi - lo);
      x = lo + step;
    }
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo <= kInversionTolerance)
      return x;
  }
  return x;
}

}  // namespace bmean
