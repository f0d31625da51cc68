#include "bmean/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace bmean {

namespace {

struct Simpson {
  const std::function<double(double)>& fn;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol ||
        std::abs(delta) <= 1e-14 * (std::abs(left) + std::abs(right)))
      return left + right + delta / 15.0;
    if (depth >= max_depth) {
      std::ostringstream os;
      os << "adaptive Simpson did not converge on [" << a << ", " << b << "]";
      throw QuadratureError(os.str(), a, b);
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = fn(a);
  const double fb = fn(b);
  const double fm = fn(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Simpson{fn, max_depth}.recurse(a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace bmean
