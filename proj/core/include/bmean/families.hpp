#pragma once

#include <cmath>
#include <type_traits>

#include "bmean/generator.hpp"
#include "bmean/sampled_function.hpp"

namespace bmean {

/// Below this value of |alpha| t^2 the odd solution is evaluated from its
/// power series instead of the closed form.
inline constexpr double kSeriesThreshold = 1e-8;
/// Number of table nodes for the canonical quasiarithmetic generator.
inline constexpr int kCanonicalNodes = 513;
/// Absolute quadrature tolerance for the canonical generator.
inline constexpr double kCanonicalTolerance = 1e-10;

/// Odd solution of Y'' = alpha Y with Y(0) = 0, Y'(0) = 1:
/// sin(sqrt(-a) t)/sqrt(-a), t, or sinh(sqrt(a) t)/sqrt(a).
/// Works on double and on Dual2.
template <class T>
T s_alpha(double alpha, const T& t) {
  using std::sin;
  using std::sinh;
  double t0;
  if constexpr (std::is_same_v<T, double>)
    t0 = t;
  else
    t0 = t.v0;
  if (alpha == 0.0) return t;
  if (std::abs(alpha) * t0 * t0 < kSeriesThreshold) {
    const T t2 = t * t;
    return t * (1.0 + alpha * t2 * (1.0 / 6.0 + alpha * t2 * (1.0 / 120.0)));
  }
  const double r = std::sqrt(std::abs(alpha));
  if (alpha < 0.0) return sin(r * t) / r;
  return sinh(r * t) / r;
}

/// Even solution of Y'' = alpha Y with Y(0) = 1, Y'(0) = 0:
/// cos(sqrt(-a) t), 1, or cosh(sqrt(a) t).
template <class T>
T c_alpha(double alpha, const T& t) {
  using std::cos;
  using std::cosh;
  if (alpha == 0.0) return T(1.0);
  const double r = std::sqrt(std::abs(alpha));
  if (alpha < 0.0) return cos(r * t);
  return cosh(r * t);
}

/// (S_alpha o w, C_alpha o w) as parsed expressions. Validates (w, 1) and,
/// for alpha < 0, that sqrt(-alpha)|w| stays below pi/2 - 1e-6 on the core so
/// that the second generator is positive. Throws ValidationError otherwise.
GeneratorPair build_family_pair(double alpha, const Expr& w, const OpenInterval& domain);

/// Same construction for an arbitrary (e.g. tabulated) monotone w.
GeneratorPair build_family_pair(double alpha, const Function& w, const OpenInterval& domain);

/// w(x) = integral of W_{f,g} from the core midpoint to x, tabulated at
/// kCanonicalNodes uniform core nodes with Hermite interpolation.
/// Throws QuadratureError with the worst subinterval on non-convergence.
SampledFunction canonical_w(const GeneratorPair& pair, int nodes = kCanonicalNodes,
                            double tolerance = kCanonicalTolerance);

}  // namespace bmean
