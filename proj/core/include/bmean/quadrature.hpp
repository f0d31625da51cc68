#pragma once

#include <functional>
#include <stdexcept>

namespace bmean {

/// Raised when adaptive quadrature exhausts its recursion budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& message, double a, double b)
      : std::runtime_error(message), a_(a), b_(b) {}
  double worst_lo() const { return a_; }
  double worst_hi() const { return b_; }

 private:
  double a_, b_;
};

inline constexpr int kSimpsonMaxDepth = 40;

/// Adaptive Simpson integral of fn over [a, b] to absolute tolerance tol.
/// Works for a > b (returns the signed integral).
double adaptive_simpson(const std::function<double(double)>& fn, double a, double b, double tol,
                        int max_depth = kSimpsonMaxDepth);

}  // namespace bmean
