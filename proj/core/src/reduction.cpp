#include "bmean/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmean/mean.hpp"

namespace bmean {

namespace {

/// x(u) = (h/k)^{-1}(u) as a dual number in u, by the inverse function rule.
Dual2 pullback(const GeneratorPair& hk, const RatioRange& range, double u) {
  const double x = ratio_inverse(hk, range, u);
  const Dual2 r = hk.ratio(x);
  const double dx = 1.0 / r.v1;
  return {x, dx, -r.v2 * dx * dx * dx};
}

}  // namespace

ReducedProblem reduce_problem(const GeneratorPair& fg, const GeneratorPair& hk) {
  if (!(fg.domain() == hk.domain()))
    throw std::invalid_argument("reduce_problem: pairs must share the same domain");
  require_valid(fg);
  require_valid(hk);

  const RatioRange range = ratio_range(hk);
  const OpenInterval J(range.min, range.max);

  auto compose_with_inverse = [hk, range](const Function& outer, std::string label) {
    return Function(
        [hk, range, outer](double u) {
          const Dual2 x = pullback(hk, range, u);
          return compose(outer(x.v0), x);
        },
        std::move(label));
  };

  const std::string inv = "(" + hk.f().label() + ")/(" + hk.g().label() + ")";
  Function p = compose_with_inverse(hk.g(), "k o inv[" + inv + "]");
  Function phi = compose_with_inverse(fg.f(), "f o inv[" + inv + "]");
  Function psi = compose_with_inverse(fg.g(), "g o inv[" + inv + "]");
  Function q([p](double u) { return Dual2::variable(u) * p(u); }, "u * p(u)");

  ReducedProblem reduced{J, std::move(p), std::move(q), std::move(phi), std::move(psi)};
  require_valid(reduced.qp());
  require_valid(reduced.phi_psi());
  return reduced;
}

double substitution_residual(const ReducedProblem& reduced, const GeneratorPair& hk, int grid) {
  const GeneratorPair qp = reduced.qp();
  const RatioRange qp_range = ratio_range(qp);
  const RatioRange hk_range = ratio_range(hk);
  const auto nodes = core_nodes(reduced.J, grid);
  std::vector<double> pulled;
  for (double u : nodes) pulled.push_back(ratio_inverse(hk, hk_range, u));

  double worst = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double lhs = bajraktarevic(qp, qp_range, nodes[i], nodes[j]);
      const double m = bajraktarevic(hk, hk_range, pulled[i], pulled[j]);
      worst = std::max(worst, std::abs(lhs - hk.ratio(m).v0));
    }
  }
  return worst;
}

double recover_weight(const MeanOracle& mean, double v0, double p_v0, double u) {
  const double m = mean(u, v0);
  const double denom = m - u;
  if (std::abs(denom) < 1e-12)
    throw std::domain_error("recover_weight: mean too close to u (u near v0?)");
  return p_v0 * (v0 - m) / denom;
}

}  // namespace bmean
