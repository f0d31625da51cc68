#pragma once

#include <vector>

#include "bmean/generator.hpp"

namespace bmean {

/// A tabulated function on the core of an interval, interpolated by piecewise
/// cubic Hermite segments. When tabulated with `monotone = true` the slopes
/// are limited (Fritsch-Carlson) so the interpolant inherits monotonicity of
/// the data.
class SampledFunction {
 public:
  /// Hermite data with known slopes.
  SampledFunction(OpenInterval domain, std::vector<double> x, std::vector<double> y,
                  std::vector<double> slopes, bool monotone);
  /// Values only; slopes come from the monotone PCHIP estimate.
  SampledFunction(OpenInterval domain, std::vector<double> x, std::vector<double> y);

  const OpenInterval& domain() const { return domain_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& slopes() const { return d_; }
  bool monotone() const { return monotone_; }

  /// Interpolant with first and second derivative. Throws std::out_of_range
  /// outside the tabulated span.
  Dual2 eval(double x) const;
  double operator()(double x) const { return eval(x).v0; }

  /// Solves w(x) = value on the tabulated span (monotone tables only).
  double inverse(double value) const;

  /// View as a Function usable in generator pairs.
  Function as_function(std::string label = "w") const;

 private:
  void limit_slopes();

  OpenInterval domain_;
  std::vector<double> x_, y_, d_;
  bool monotone_ = false;
};

}  // namespace bmean
