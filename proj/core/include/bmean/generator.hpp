#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmean/dual.hpp"
#include "bmean/expr.hpp"

namespace bmean {

/// Relative margin that shrinks an open domain to its closed core.
inline constexpr double kCoreMargin = 1e-3;
/// Default number of Chebyshev nodes for validation and fitting.
inline constexpr int kDefaultNodes = 257;
/// Floor for g and |W_{f,g}| below which a pair is numerically degenerate.
inline constexpr double kValidationFloor = 1e-9;
/// Target bracket width (in x) for ratio inversion.
inline constexpr double kInversionTolerance = 1e-13;

/// Raised when a value to invert lies outside the attained range of a ratio.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation needs a pair that fails validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded open interval (lo, hi).
class OpenInterval {
 public:
  OpenInterval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }

  /// Closed core [lo + m*w, hi - m*w] on which all numerics operate.
  double core_lo() const { return lo_ + kCoreMargin * width(); }
  double core_hi() const { return hi_ - kCoreMargin * width(); }
  bool in_core(double x) const { return x >= core_lo() && x <= core_hi(); }

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;

 private:
  double lo_;
  double hi_;
};

/// n Chebyshev nodes of the first kind on [a, b], in increasing order.
std::vector<double> chebyshev_nodes(double a, double b, int n);
/// Chebyshev nodes on the core of an interval.
std::vector<double> core_nodes(const OpenInterval& domain, int n);

/// A real function of one variable that reports its first two derivatives.
/// Either backed by a parsed expression or by an arbitrary callable (used
/// for composed functions that have no closed form).
class Function {
 public:
  using Evaluator = std::function<Dual2(double)>;

  Function() = default;
  Function(Expr expr);  // NOLINT(google-explicit-constructor)
  Function(Evaluator eval, std::string label);

  Dual2 operator()(double x) const { return eval_(x); }
  double value(double x) const { return eval_(x).v0; }

  const std::string& label() const { return label_; }
  const std::optional<Expr>& expr() const { return expr_; }

 private:
  Evaluator eval_;
  std::string label_;
  std::optional<Expr> expr_;
};

/// Generator (f, g) of a Bajraktarevic mean on an open interval.
class GeneratorPair {
 public:
  GeneratorPair(Function f, Function g, OpenInterval domain);

  /// Parses both expressions.
  static GeneratorPair from_strings(const std::string& f, const std::string& g, double lo,
                                    double hi);

  const Function& f() const { return f_; }
  const Function& g() const { return g_; }
  const OpenInterval& domain() const { return domain_; }

  /// (f/g) with derivatives at x.
  Dual2 ratio(double x) const { return f_(x) / g_(x); }
  /// W_{f,g}(x) = f'g - fg'.
  double wronskian(double x) const;

 private:
  Function f_;
  Function g_;
  OpenInterval domain_;
};

struct ValidationReport {
  bool ok = false;
  double min_g = 0.0;
  double min_abs_wronskian = 0.0;
  int wronskian_sign = 0;
  int samples_used = 0;
  double floor = kValidationFloor;
  std::string reason;  // empty when ok
};

/// Samples g and W_{f,g} at Chebyshev nodes of the core. Domain errors raised
/// by the expressions propagate.
ValidationReport validate_pair(const GeneratorPair& pair, int n_samples = kDefaultNodes,
                               double floor = kValidationFloor);

/// Throws ValidationError with the report reason unless the pair validates.
void require_valid(const GeneratorPair& pair, int n_samples = kDefaultNodes);

/// The attained range [min, max] of f/g over the core, from its endpoints.
struct RatioRange {
  double min = 0.0;
  double max = 0.0;
  bool increasing = true;
};
RatioRange ratio_range(const GeneratorPair& pair);

/// Solves (f/g)(x) = t for x in the core. Safeguarded Newton iteration inside
/// a bisection bracket; throws RangeError if t is not attained.
double ratio_inverse(const GeneratorPair& pair, double t);
double ratio_inverse(const GeneratorPair& pair, const RatioRange& range, double t);

/// Safeguarded Newton-bisection solve of fn(x) = t on [lo, hi] for a
/// monotone fn whose values at the endpoints bracket t. fn reports its
/// derivative in v1.
double invert_monotone(const std::function<Dual2(double)>& fn, double lo, double hi, double t,
                       bool increasing);

}  // namespace bmean
