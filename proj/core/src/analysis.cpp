#include "bmean/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bmean/linalg.hpp"

namespace bmean {

namespace {

void require_same_domain(const GeneratorPair& a, const GeneratorPair& b) {
  if (!(a.domain() == b.domain()))
    throw std::invalid_argument("generator pairs must share the same domain");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ConstantFit constant_fit(const std::vector<double>& values, const FitOptions& opt) {
  ConstantFit fit;
  fit.nodes = static_cast<int>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  fit.spread = *hi - *lo;
  fit.value = median(values);
  fit.tolerance = opt.constancy_tolerance * (1.0 + std::abs(fit.value));
  fit.ok = std::isfinite(fit.spread) && fit.spread <= fit.tolerance;
  if (!fit.ok) {
    std::ostringstream os;
    os << "ratio is not constant (spread " << fit.spread << " > " << fit.tolerance << ")";
    fit.note = os.str();
  }
  return fit;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string condition_note(double condition) {
  std::ostringstream os;
  os << "ill-conditioned normal equations (cond " << condition << ")";
  return os.str();
}

}  // namespace

double wronskian(const GeneratorPair& pair, double x, int order) {
  const Dual2 f = pair.f()(x);
  const Dual2 g = pair.g()(x);
  switch (order) {
    case 0: return f.v1 * g.v0 - f.v0 * g.v1;
    case 1: return f.v2 * g.v1 - f.v1 * g.v2;
    default: throw std::invalid_argument("wronskian order must be 0 or 1");
  }
}

ConstantFit fit_gamma(const GeneratorPair& a, const GeneratorPair& b, const FitOptions& opt) {
  require_same_domain(a, b);
  std::vector<double> ratios;
  for (double x : core_nodes(a.domain(), opt.nodes)) ratios.push_back(b.wronskian(x) / a.wronskian(x));
  return constant_fit(ratios, opt);
}

ConstantFit check_cubic_ratio(const GeneratorPair& pair, const FitOptions& opt) {
  std::vector<double> ratios;
  for (double x : core_nodes(pair.domain(), opt.nodes)) {
    const double w = wronskian(pair, x, 0);
    ratios.push_back(wronskian(pair, x, 1) / (w * w * w));
  }
  return constant_fit(ratios, opt);
}

QuadraticFormFit fit_quadratic_form(const GeneratorPair& pair, const FitOptions& opt) {
  const auto nodes = core_nodes(pair.domain(), opt.nodes);
  std::vector<std::vector<double>> cols(3);
  for (double x : nodes) {
    const double f = pair.f().value(x);
    const double g = pair.g().value(x);
    cols[0].push_back(f * f);
    cols[1].push_back(f * g);
    cols[2].push_back(g * g);
  }
  const std::vector<double> ones(nodes.size(), 1.0);
  const LeastSquaresResult ls = least_squares(cols, ones);

  QuadraticFormFit fit;
  fit.nodes = static_cast<int>(nodes.size());
  fit.tolerance = opt.fit_tolerance;
  fit.condition = ls.condition;
  if (ls.rank_deficient) {
    fit.note = "rank-deficient system: f^2, fg, g^2 are linearly dependent";
    return fit;
  }
  fit.a = ls.coefficients[0];
  fit.b = ls.coefficients[1];
  fit.c = ls.coefficients[2];
  fit.residual = max_abs(ls.residuals);
  fit.ok = fit.residual <= fit.tolerance;
  if (!fit.ok) {
    std::ostringstream os;
    os << "no quadratic form equals 1 (max residual " << fit.residual << ")";
    fit.note = os.str();
  } else if (ls.condition > kConditionWarning) {
    fit.note = condition_note(ls.condition);
  }
  return fit;
}

PolynomialFit fit_polynomial_P(const GeneratorPair& pair, const FitOptions& opt) {
  const auto nodes = core_nodes(pair.domain(), opt.nodes);
  std::vector<std::vector<double>> cols(3);
  std::vector<double> target;
  for (double x : nodes) {
    const double f = pair.f().value(x);
    const double g = pair.g().value(x);
    const double t = f / g;
    cols[0].push_back(1.0);
    cols[1].push_back(t);
    cols[2].push_back(t * t);
    target.push_back(1.0 / (g * g));
  }
  const LeastSquaresResult ls = least_squares(cols, target);

  PolynomialFit fit;
  fit.nodes = static_cast<int>(nodes.size());
  fit.tolerance = opt.fit_tolerance;
  fit.condition = ls.condition;
  if (ls.rank_deficient) {
    fit.note = "rank-deficient system in (1, t, t^2)";
    return fit;
  }
  fit.poly = {ls.coefficients[0], ls.coefficients[1], ls.coefficients[2]};
  bool positive = true;
  for (std::size_t i = 0; i < target.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(ls.residuals[i]) / target[i]);
    positive = positive && fit.poly(cols[1][i]) > 0.0;
  }
  fit.ok = fit.residual <= fit.tolerance && positive;
  if (!positive) {
    fit.note = "fitted polynomial is not positive on the ratio range";
  } else if (!fit.ok) {
    std::ostringstream os;
    os << "1/g^2 is not a quadratic in f/g (max relative residual " << fit.residual << ")";
    fit.note = os.str();
  } else if (ls.condition > kConditionWarning) {
    fit.note = condition_note(ls.condition);
  }
  return fit;
}

EquivalenceWitness fit_equivalence(const GeneratorPair& a, const GeneratorPair& b,
                                   const FitOptions& opt) {
  require_same_domain(a, b);
  const auto nodes = core_nodes(a.domain(), opt.nodes);
  std::vector<std::vector<double>> cols(2);
  std::vector<double> h, k;
  for (double x : nodes) {
    cols[0].push_back(a.f().value(x));
    cols[1].push_back(a.g().value(x));
    h.push_back(b.f().value(x));
    k.push_back(b.g().value(x));
  }

  EquivalenceWitness w;
  w.nodes = static_cast<int>(nodes.size());
  w.tolerance = opt.fit_tolerance;
  const LeastSquaresResult lh = least_squares(cols, h);
  const LeastSquaresResult lk = least_squares(cols, k);
  if (lh.rank_deficient || lk.rank_deficient) {
    w.note = "rank-deficient system: f and g are linearly dependent";
    return w;
  }
  w.a = lh.coefficients[0];
  w.b = lh.coefficients[1];
  w.c = lk.coefficients[0];
  w.d = lk.coefficients[1];
  w.residual = std::max(max_abs(lh.residuals) / max_abs(h), max_abs(lk.residuals) / max_abs(k));
  const double n1 = std::hypot(w.a, w.b);
  const double n2 = std::hypot(w.c, w.d);
  w.determinant = n1 > 0.0 && n2 > 0.0 ? (w.a * w.d - w.b * w.c) / (n1 * n2) : 0.0;

  const bool fits = w.residual <= w.tolerance;
  const bool regular = std::abs(w.determinant) >= opt.determinant_floor;
  w.ok = fits && regular;
  std::ostringstream os;
  if (!fits)
    os << "(h, k) is not a linear image of (f, g) (max relative residual " << w.residual << ")";
  else if (!regular)
    os << "linear relation is singular (normalized determinant " << w.determinant << ")";
  w.note = os.str();
  return w;
}

double check_prod_identity(const Function& weight_p, const GeneratorPair& phi_psi, int grid) {
  if (grid < 5) throw std::invalid_argument("check_prod_identity needs grid >= 5");
  const auto nodes = core_nodes(phi_psi.domain(), grid);
  struct Sample {
    Dual2 phi, psi, p;
  };
  std::vector<Sample> s;
  for (double u : nodes) s.push_back({phi_psi.f()(u), phi_psi.g()(u), weight_p(u)});

  double max_diff = 0.0;
  double max_side = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double u = nodes[i], v = nodes[j];
      const Sample& su = s[i];
      const Sample& sv = s[j];
      const double psi_sum = su.psi.v0 + sv.psi.v0;
      const double phi_sum = su.phi.v0 + sv.phi.v0;
      const double p_sum = su.p.v0 + sv.p.v0;
      const double lhs = (su.phi.v1 * psi_sum - phi_sum * su.psi.v1) *
                         (sv.p.v1 * su.p.v0 * (v - u) + sv.p.v0 * p_sum);
      const double rhs = (sv.phi.v1 * psi_sum - phi_sum * sv.psi.v1) *
                         (su.p.v1 * sv.p.v0 * (u - v) + su.p.v0 * p_sum);
      max_diff = std::max(max_diff, std::abs(lhs - rhs));
      max_side = std::max({max_side, std::abs(lhs), std::abs(rhs)});
    }
  }
  return max_side > 0.0 ? max_diff / max_side : max_diff;
}

}  // namespace bmean
