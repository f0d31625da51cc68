#include "bmean/decide.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bmean/families.hpp"
#include "bmean/mean.hpp"
#include "bmean/quadrature.hpp"

namespace bmean {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

/// max over the grid of |B_pair - B_{w,1}| for both pairs.
double representation_deviation(const GeneratorPair& a, const GeneratorPair& b,
                                const SampledFunction& w, int grid) {
  const GeneratorPair qa = quasiarithmetic_pair(w.as_function(), a.domain());
  const RatioRange ra = ratio_range(a), rb = ratio_range(b), rw = ratio_range(qa);
  const auto nodes = core_nodes(a.domain(), grid);
  double worst = 0.0;
  for (double x : nodes) {
    for (double y : nodes) {
      const double mw = bajraktarevic(qa, rw, x, y);
      worst = std::max({worst, std::abs(bajraktarevic(a, ra, x, y) - mw),
                        std::abs(bajraktarevic(b, rb, x, y) - mw)});
    }
  }
  return worst;
}

double scaled_spread(const ConstantFit& c) { return c.spread / (1.0 + std::abs(c.value)); }

/// Integral of 1/P from the ratio at the core midpoint to the ratio at each node.
std::vector<double> integral_of_reciprocal(const Quadratic& poly, const GeneratorPair& pair,
                                           const std::vector<double>& nodes) {
  const double t0 = pair.ratio(pair.domain().midpoint()).v0;
  const std::function<double(double)> inv = [&poly](double t) { return 1.0 / poly(t); };
  std::vector<double> out;
  out.reserve(nodes.size());
  for (double x : nodes) out.push_back(adaptive_simpson(inv, t0, pair.ratio(x).v0, 1e-13));
  return out;
}

}  // namespace

std::vector<GridRow> compare_on_grid(const GeneratorPair& a, const GeneratorPair& b, int grid) {
  if (!(a.domain() == b.domain()))
    throw std::invalid_argument("means can only be compared on a common domain");
  if (grid < 5) throw std::invalid_argument("grid must be at least 5");
  const RatioRange ra = ratio_range(a), rb = ratio_range(b);
  const auto nodes = core_nodes(a.domain(), grid);
  std::vector<GridRow> rows;
  rows.reserve(nodes.size() * nodes.size());
  for (double x : nodes) {
    for (double y : nodes) {
      const double ma = bajraktarevic(a, ra, x, y);
      const double mb = bajraktarevic(b, rb, x, y);
      rows.push_back({x, y, ma, mb, ma - mb});
    }
  }
  return rows;
}

EqualityVerdict means_equal_on_grid(const GeneratorPair& a, const GeneratorPair& b, int grid,
                                    double tolerance) {
  EqualityVerdict v;
  v.grid_size = grid;
  v.tolerance = tolerance * (1.0 + a.domain().width());
  for (const GridRow& r : compare_on_grid(a, b, grid)) {
    if (std::abs(r.diff) > v.max_deviation) {
      v.max_deviation = std::abs(r.diff);
      v.worst_x = r.x;
      v.worst_y = r.y;
    }
  }
  v.equal = v.max_deviation <= v.tolerance;
  return v;
}

AssertionReport verify_assertions(const GeneratorPair& a, const GeneratorPair& b,
                                  const ClassifyOptions& opt) {
  AssertionReport rep;
  Evidence& ev = rep.evidence;
  const double width_scale = 1.0 + a.domain().width();

  rep.gamma = fit_gamma(a, b, opt.fit);
  rep.alpha = check_cubic_ratio(a, opt.fit);
  rep.beta = check_cubic_ratio(b, opt.fit);
  const ConstantFit& gamma = *rep.gamma;

  {
    AssertionResult r;
    r.passed = rep.alpha->ok && rep.beta->ok && gamma.ok;
    r.residual = std::max({scaled_spread(*rep.alpha), scaled_spread(*rep.beta), scaled_spread(gamma)});
    r.detail = "W'_A/W_A^3 = " + fmt(rep.alpha->value) + ", W'_B/W_B^3 = " + fmt(rep.beta->value) +
               ", W_B/W_A = " + fmt(gamma.value);
    if (!r.passed) r.detail += " (not all constant)";
    ev["ii"] = r;
  }

  rep.quad_a = fit_quadratic_form(a, opt.fit);
  rep.quad_b = fit_quadratic_form(b, opt.fit);
  {
    AssertionResult r;
    r.passed = rep.quad_a->ok && rep.quad_b->ok && gamma.ok;
    r.residual = std::max(rep.quad_a->residual, rep.quad_b->residual);
    r.detail = "A: (" + fmt(rep.quad_a->a) + ", " + fmt(rep.quad_a->b) + ", " + fmt(rep.quad_a->c) +
               "), B: (" + fmt(rep.quad_b->a) + ", " + fmt(rep.quad_b->b) + ", " +
               fmt(rep.quad_b->c) + ")";
    for (const auto* q : {&*rep.quad_a, &*rep.quad_b})
      if (!q->note.empty()) r.detail += "; " + q->note;
    ev["iii"] = r;
  }

  rep.poly_p = fit_polynomial_P(a, opt.fit);
  rep.poly_q = fit_polynomial_P(b, opt.fit);
  {
    AssertionResult r;
    r.residual = std::max(rep.poly_p->residual, rep.poly_q->residual);
    if (rep.poly_p->ok && rep.poly_q->ok && gamma.ok) {
      const auto nodes = core_nodes(a.domain(), opt.fit.nodes);
      const auto ip = integral_of_reciprocal(rep.poly_p->poly, a, nodes);
      const auto iq = integral_of_reciprocal(rep.poly_q->poly, b, nodes);
      double shift = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        shift += iq[i] - gamma.value * ip[i];
        scale = std::max(scale, std::abs(iq[i]));
      }
      shift /= static_cast<double>(nodes.size());
      double chain = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        chain = std::max(chain, std::abs(iq[i] - gamma.value * ip[i] - shift));
      chain /= std::max(scale, 1e-300);
      rep.delta = shift;
      r.residual = std::max(r.residual, chain);
      r.passed = chain <= opt.fit.fit_tolerance;
      r.detail = "delta = " + fmt(shift) + ", chain residual " + fmt(chain);
    } else {
      r.detail = "no polynomial representation";
      for (const auto* p : {&*rep.poly_p, &*rep.poly_q})
        if (!p->note.empty()) r.detail += "; " + p->note;
    }
    ev["iv"] = r;
  }

  std::optional<std::string> w_failure;
  try {
    rep.w_table = canonical_w(a, opt.canonical_nodes, opt.quadrature_tolerance);
  } catch (const std::exception& e) {
    w_failure = e.what();
  }

  {
    AssertionResult r;
    if (!rep.w_table) {
      r.residual = kNaN;
      r.detail = "canonical w unavailable: " + *w_failure;
    } else if (!(rep.alpha->ok && rep.beta->ok && gamma.ok)) {
      r.residual = kNaN;
      r.detail = "family parameters undefined (cubic ratios or gamma not constant)";
    } else {
      rep.family_alpha = 0.0 - rep.alpha->value;
      rep.family_beta = 0.0 - rep.beta->value * gamma.value * gamma.value;
      try {
        const Function w = rep.w_table->as_function("w");
        const auto fam_a = build_family_pair(*rep.family_alpha, w, a.domain());
        const auto fam_b = build_family_pair(*rep.family_beta, w, a.domain());
        const EquivalenceWitness ea = fit_equivalence(fam_a, a, opt.fit);
        const EquivalenceWitness eb = fit_equivalence(fam_b, b, opt.fit);
        r.passed = ea.ok && eb.ok;
        r.residual = std::max(ea.residual, eb.residual);
        r.detail = "family parameters " + fmt(*rep.family_alpha) + ", " + fmt(*rep.family_beta);
        if (!ea.ok) r.detail += "; A: " + ea.note;
        if (!eb.ok) r.detail += "; B: " + eb.note;
      } catch (const std::exception& e) {
        r.residual = kNaN;
        r.detail = std::string("family construction failed: ") + e.what();
      }
    }
    ev["v"] = r;
  }

  const double repr_tol = opt.representation_tolerance * width_scale;
  {
    AssertionResult r;
    if (rep.w_table) {
      r.residual = representation_deviation(a, b, *rep.w_table, opt.grid);
      r.passed = r.residual <= repr_tol;
      r.detail = "max |B - B_{w,1}| = " + fmt(r.residual) + " with w = integral of W_A";
    } else {
      r.residual = kNaN;
      r.detail = "canonical w unavailable: " + *w_failure;
    }
    ev["vi"] = r;
  }

  {
    AssertionResult r = ev["vi"];
    if (!r.passed) {
      try {
        const SampledFunction wb = canonical_w(b, opt.canonical_nodes, opt.quadrature_tolerance);
        const double dev = representation_deviation(a, b, wb, opt.grid);
        if (!(dev >= r.residual)) r.residual = dev;
        r.passed = dev <= repr_tol;
        r.detail = "max |B - B_{w,1}| = " + fmt(dev) + " with w = integral of W_B";
      } catch (const std::exception& e) {
        r.detail += std::string("; integral of W_B unavailable: ") + e.what();
      }
    }
    ev["vii"] = r;
  }
  return rep;
}

std::string_view tag_name(Tag tag) {
  switch (tag) {
    case Tag::NotEqual: return "NotEqual";
    case Tag::EquivalentGenerators: return "EquivalentGenerators";
    case Tag::CommonQuasiarithmetic: return "CommonQuasiarithmetic";
    case Tag::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Classification classify_equality(const GeneratorPair& a, const GeneratorPair& b,
                                 const ClassifyOptions& opt) {
  Classification c;
  c.verdict = means_equal_on_grid(a, b, opt.grid, opt.equality_tolerance);
  c.evidence["i"] = {c.verdict.equal, c.verdict.max_deviation,
                     "max grid deviation " + fmt(c.verdict.max_deviation) + " at (" +
                         fmt(c.verdict.worst_x) + ", " + fmt(c.verdict.worst_y) + ")"};
  if (!c.verdict.equal) {
    c.tag = Tag::NotEqual;
    return c;
  }

  const EquivalenceWitness witness = fit_equivalence(a, b, opt.fit);
  c.evidence["hk"] = {witness.ok, witness.residual,
                      witness.ok ? "h = " + fmt(witness.a) + " f + " + fmt(witness.b) +
                                       " g, k = " + fmt(witness.c) + " f + " + fmt(witness.d) + " g"
                                 : witness.note};
  if (witness.ok) c.witness = witness;

  AssertionReport rep = verify_assertions(a, b, opt);
  for (auto& [key, value] : rep.evidence) c.evidence[key] = value;
  c.gamma = rep.gamma;
  c.alpha = rep.alpha;
  c.beta = rep.beta;
  c.quad_a = rep.quad_a;
  c.quad_b = rep.quad_b;
  c.poly_p = rep.poly_p;
  c.poly_q = rep.poly_q;
  c.delta = rep.delta;
  c.w_table = std::move(rep.w_table);

  if (witness.ok) {
    c.tag = Tag::EquivalentGenerators;
  } else if (c.gamma && c.gamma->ok && c.w_table && c.evidence["vi"].passed) {
    c.tag = Tag::CommonQuasiarithmetic;
  } else {
    c.tag = Tag::Inconclusive;
  }
  return c;
}

std::string summary(const Classification& c) {
  std::ostringstream os;
  os.precision(10);
  os << "tag: " << tag_name(c.tag) << "\n";
  os << "max grid deviation: " << c.verdict.max_deviation << " (tolerance " << c.verdict.tolerance
     << ", grid " << c.verdict.grid_size << "x" << c.verdict.grid_size << ")\n";
  if (c.witness)
    os << "witness: a=" << c.witness->a << " b=" << c.witness->b << " c=" << c.witness->c
       << " d=" << c.witness->d << " (residual " << c.witness->residual << ")\n";
  if (c.gamma) os << "gamma: " << c.gamma->value << (c.gamma->ok ? "" : " (not constant)") << "\n";
  if (c.alpha && c.beta)
    os << "cubic ratios: " << c.alpha->value << ", " << c.beta->value << "\n";
  if (c.quad_a && c.quad_b && c.quad_a->ok && c.quad_b->ok)
    os << "quadratic forms: (" << c.quad_a->a << ", " << c.quad_a->b << ", " << c.quad_a->c
       << ") and (" << c.quad_b->a << ", " << c.quad_b->b << ", " << c.quad_b->c << ")\n";
  if (c.poly_p && c.poly_q && c.poly_p->ok && c.poly_q->ok)
    os << "P(t) = " << c.poly_p->poly.c0 << " + " << c.poly_p->poly.c1 << " t + "
       << c.poly_p->poly.c2 << " t^2, Q(t) = " << c.poly_q->poly.c0 << " + " << c.poly_q->poly.c1
       << " t + " << c.poly_q->poly.c2 << " t^2\n";
  if (c.delta) os << "delta: " << *c.delta << "\n";
  for (const auto& [key, r] : c.evidence)
    os << "  (" << key << ") " << (r.passed ? "pass" : "fail") << "  " << r.detail << "\n";
  return os.str();
}

}  // namespace bmean
