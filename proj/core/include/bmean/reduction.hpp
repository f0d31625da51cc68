#pragma once

#include <functional>

#include "bmean/generator.hpp"

namespace bmean {

/// The weighted form of the equality problem obtained by substituting
/// x = (h/k)^{-1}(u):
///   p = k o (h/k)^{-1},  q(u) = u p(u),  phi = f o (h/k)^{-1},  psi = g o (h/k)^{-1}
/// on J = (h/k)(core of I). B_{q,p} is the p-weighted arithmetic mean.
struct ReducedProblem {
  OpenInterval J;
  Function p, q, phi, psi;

  GeneratorPair qp() const { return GeneratorPair(q, p, J); }
  GeneratorPair phi_psi() const { return GeneratorPair(phi, psi, J); }
};

/// Builds the reduced problem for B_{f,g} = B_{h,k}. Both pairs must be valid
/// on the same domain; the composed pairs (q, p) and (phi, psi) are validated
/// on J and a ValidationError is raised if either fails.
ReducedProblem reduce_problem(const GeneratorPair& fg, const GeneratorPair& hk);

/// max |B_{q,p}(u,v) - (h/k)(B_{h,k}(x,y))| over a grid x grid set of
/// Chebyshev pairs in the core of J, with x, y the pullbacks of u, v.
double substitution_residual(const ReducedProblem& reduced, const GeneratorPair& hk, int grid);

using MeanOracle = std::function<double(double, double)>;

/// Recovers the weight of a p-weighted arithmetic mean from the mean itself:
///   p(u) = p(v0) (v0 - M(u, v0)) / (M(u, v0) - u).
/// Throws std::domain_error when |M(u, v0) - u| < 1e-12.
double recover_weight(const MeanOracle& mean, double v0, double p_v0, double u);

}  // namespace bmean
