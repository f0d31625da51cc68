#pragma once

#include <string>

#include "bmean/generator.hpp"

namespace bmean {

/// Shared sampling and acceptance thresholds for every fit in this module.
struct FitOptions {
  int nodes = kDefaultNodes;
  double fit_tolerance = 1e-7;        // max relative residual
  double constancy_tolerance = 1e-7;  // spread <= tol * (1 + |median|)
  double determinant_floor = 1e-6;    // normalized |ad - bc|
};

/// A quantity that should be constant across the sample nodes.
struct ConstantFit {
  double value = 0.0;   // median of the pointwise values
  double spread = 0.0;  // max - min of the pointwise values
  double tolerance = 0.0;
  int nodes = 0;
  bool ok = false;
  std::string note;
};

/// a f^2 + b f g + c g^2 = 1.
struct QuadraticFormFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double residual = 0.0;
  double condition = 0.0;
  double tolerance = 0.0;
  int nodes = 0;
  bool ok = false;
  std::string note;
};

/// P(t) = c0 + c1 t + c2 t^2.
struct Quadratic {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double operator()(double t) const { return c0 + t * (c1 + t * c2); }
};

/// 1/g^2 = P(f/g).
struct PolynomialFit {
  Quadratic poly;
  double residual = 0.0;
  double condition = 0.0;
  double tolerance = 0.0;
  int nodes = 0;
  bool ok = false;
  std::string note;
};

/// h = a f + b g, k = c f + d g with ad - bc != 0.
struct EquivalenceWitness {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double residual = 0.0;     // max of the two relative residuals
  double determinant = 0.0;  // ad - bc of the row-normalized coefficients
  double tolerance = 0.0;
  int nodes = 0;
  bool ok = false;
  std::string note;
};

/// order 0: W_{f,g} = f'g - fg'; order 1: W_{f',g'} = f''g' - f'g''.
double wronskian(const GeneratorPair& pair, double x, int order = 0);

/// W_B / W_A at the nodes; ok when the ratio is constant.
ConstantFit fit_gamma(const GeneratorPair& a, const GeneratorPair& b, const FitOptions& opt = {});

/// W_{f',g'} / (W_{f,g})^3 at the nodes; ok when constant.
ConstantFit check_cubic_ratio(const GeneratorPair& pair, const FitOptions& opt = {});

/// Least squares for a f^2 + b f g + c g^2 = 1. The right side is fixed at 1.
QuadraticFormFit fit_quadratic_form(const GeneratorPair& pair, const FitOptions& opt = {});

/// Least squares for 1/g^2 against (1, t, t^2) with t = f/g; P must also be
/// positive at the nodes.
PolynomialFit fit_polynomial_P(const GeneratorPair& pair, const FitOptions& opt = {});

/// Two independent two-column least squares: h on {f, g} and k on {f, g}.
EquivalenceWitness fit_equivalence(const GeneratorPair& a, const GeneratorPair& b,
                                   const FitOptions& opt = {});

/// Maximum difference between the two sides of the differentiated weighted
/// equality identity over a grid x grid set of Chebyshev pairs, normalized by
/// the largest side magnitude seen.
double check_prod_identity(const Function& weight_p, const GeneratorPair& phi_psi, int grid);

}  // namespace bmean
