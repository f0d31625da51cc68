#pragma once

#include "bmean/generator.hpp"

namespace bmean {

/// B_{f,g}(x, y) = (f/g)^{-1}((f(x) + f(y)) / (g(x) + g(y))).
///
/// The pair must be valid and x, y must lie in the core of its domain. The
/// intermediate ratio is clamped to the attained range before inversion, so
/// rounding at x ~ y never triggers a RangeError.
double bajraktarevic(const GeneratorPair& pair, double x, double y);
double bajraktarevic(const GeneratorPair& pair, const RatioRange& range, double x, double y);

/// Quasiarithmetic mean w^{-1}((w(x) + w(y)) / 2), i.e. B_{w,1}.
double quasiarithmetic(const Function& w, const OpenInterval& domain, double x, double y);

/// The generator pair (w, 1) realizing the quasiarithmetic mean of w.
GeneratorPair quasiarithmetic_pair(const Function& w, const OpenInterval& domain);

}  // namespace bmean
