#pragma once

// Test-only oracles. Nothing in here calls into the dual-number or
// inversion code paths it is used to check.

#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace bmean::testing {

/// Central difference of a scalar function.
inline double central_first(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Second central difference with one Richardson step (error O(h^4)).
inline double central_second(const std::function<double(double)>& f, double x, double h = 1e-3) {
  auto d2 = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
  return (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
}

/// Plain bisection for an increasing or decreasing continuous function.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
  const bool increasing = f(hi) > f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < target) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Bajraktarevic mean by plain bisection on the value-only generators.
inline double reference_mean(const std::function<double(double)>& f,
                             const std::function<double(double)>& g, double lo, double hi,
                             double x, double y) {
  const double t = (f(x) + f(y)) / (g(x) + g(y));
  return bisect([&](double s) { return f(s) / g(s); }, lo, hi, t);
}

/// Random polynomial source text of the given degree with coefficients in [-2, 2].
inline std::string random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::string s = std::to_string(coef(rng));
  for (int k = 1; k <= degree; ++k) s += " + " + std::to_string(coef(rng)) + "*x^" + std::to_string(k);
  return s;
}

}  // namespace bmean::testing
