#include "bmean/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>


namespace bmean {

SampledFunction::SampledFunction(OpenInterval domain, std::vector<double> x, std::vector<double> y,
                                 std::vector<double> slopes, bool monotone)
    : domain_(domain), x_(std::move(x)), y_(std::move(y)), d_(std::move(slopes)),
      monotone_(monotone) {
  if (x_.size() < 2 || y_.size() != x_.size() || d_.size() != x_.size())
    throw std::invalid_argument("SampledFunction: need >= 2 nodes with matching values");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("SampledFunction: x must increase");
  if (monotone_) {
    for (std::size_t i = 1; i < y_.size(); ++i)
      if ((y_[i] - y_[i - 1]) * (y_.back() - y_.front()) <= 0.0)
        throw std::invalid_argument("SampledFunction: values are not strictly monotone");
    limit_slopes();
  }
}

SampledFunction::SampledFunction(OpenInterval domain, std::vector<double> x, std::vector<double> y)
    : domain_(domain), x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("SampledFunction: bad table");
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  d_.assign(n, 0.0);
  d_.front() = secant.front();
  d_.back() = secant.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Weighted harmonic mean of neighbouring secants (Fritsch-Butland).
    if (secant[i - 1] * secant[i] > 0.0) {
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
      d_[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
    }
  }
  monotone_ = true;
  for (std::size_t i = 0; i + 1 < n; ++i) monotone_ = monotone_ && secant[i] * secant[0] > 0.0;
  if (monotone_) limit_slopes();
}

void SampledFunction::limit_slopes() {
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double delta = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    double a = d_[i] / delta;
    double b = d_[i + 1] / delta;
    if (a < 0.0) d_[i] = 0.0, a = 0.0;
    if (b < 0.0) d_[i + 1] = 0.0, b = 0.0;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d_[i] = tau * a * delta;
      d_[i + 1] = tau * b * delta;
    }
  }
}

Dual2 SampledFunction::eval(double x) const {
  const double span = x_.back() - x_.front();
  if (!(x >= x_.front() - 1e-12 * span && x <= x_.back() + 1e-12 * span))
    throw std::out_of_range("SampledFunction evaluated outside its table at x=" +
                            std::to_string(x));
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);

  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double y0 = y_[i], y1 = y_[i + 1];
  const double m0 = h * d_[i], m1 = h * d_[i + 1];

  const double value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                       (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  const double first = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 +
                        (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1) / h;
  const double second = ((12 * s - 6) * y0 + (6 * s - 4) * m0 + (-12 * s + 6) * y1 +
                         (6 * s - 2) * m1) / (h * h);
  return {value, first, second};
}

double SampledFunction::inverse(double value) const {
  if (!monotone_) throw std::logic_error("SampledFunction::inverse needs a monotone table");
  const bool increasing = y_.back() > y_.front();
  const double lo = std::min(y_.front(), y_.back());
  const double hi = std::max(y_.front(), y_.back());
  const double slack = 1e-12 * (1.0 + std::abs(value));
  if (!(value >= lo - slack && value <= hi + slack))
    throw RangeError("value " + std::to_string(value) + " outside the tabulated range");
  return invert_monotone([this](double x) { return eval(x); }, x_.front(), x_.back(),
                         std::clamp(value, lo, hi), increasing);
}

Function SampledFunction::as_function(std::string label) const {
  auto self = std::make_shared<const SampledFunction>(*this);
  return Function([self](double x) { return self->eval(x); }, std::move(label));
}

}  // namespace bmean
