#include "bmean/mean.hpp"

#include <algorithm>

namespace bmean {

double bajraktarevic(const GeneratorPair& pair, double x, double y) {
  return bajraktarevic(pair, ratio_range(pair), x, y);
}

double bajraktarevic(const GeneratorPair& pair, const RatioRange& range, double x, double y) {
  const double fx = pair.f().value(x);
  const double fy = pair.f().value(y);
  const double gx = pair.g().value(x);
  const double gy = pair.g().value(y);
  const double t = std::clamp((fx + fy) / (gx + gy), range.min, range.max);
  return ratio_inverse(pair, range, t);
}

GeneratorPair quasiarithmetic_pair(const Function& w, const OpenInterval& domain) {
  return GeneratorPair(w, Function(ast::number(1.0)), domain);
}

double quasiarithmetic(const Function& w, const OpenInterval& domain, double x, double y) {
  return bajraktarevic(quasiarithmetic_pair(w, domain), x, y);
}

}  // namespace bmean
