#include "report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace bmean::cli {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const ConstantFit& fit, const char* kind) {
  return Json{{"kind", kind},
              {"constants", {{"value", number(fit.value)}}},
              {"residual", number(fit.spread / (1.0 + std::abs(fit.value)))},
              {"spread", number(fit.spread)},
              {"nodes", fit.nodes},
              {"tolerance", number(fit.tolerance)},
              {"ok", fit.ok},
              {"note", fit.note}};
}

Json to_json(const QuadraticFormFit& fit) {
  return Json{{"kind", "quadratic_form"},
              {"constants", {{"a", number(fit.a)}, {"b", number(fit.b)}, {"c", number(fit.c)}}},
              {"residual", number(fit.residual)},
              {"spread", nullptr},
              {"nodes", fit.nodes},
              {"tolerance", number(fit.tolerance)},
              {"ok", fit.ok},
              {"note", fit.note},
              {"condition", number(fit.condition)}};
}

Json to_json(const PolynomialFit& fit, const char* kind) {
  return Json{{"kind", kind},
              {"constants",
               {{"c0", number(fit.poly.c0)}, {"c1", number(fit.poly.c1)}, {"c2", number(fit.poly.c2)}}},
              {"residual", number(fit.residual)},
              {"spread", nullptr},
              {"nodes", fit.nodes},
              {"tolerance", number(fit.tolerance)},
              {"ok", fit.ok},
              {"note", fit.note},
              {"condition", number(fit.condition)}};
}

Json to_json(const EquivalenceWitness& w) {
  return Json{{"kind", "equivalence"},
              {"constants",
               {{"a", number(w.a)}, {"b", number(w.b)}, {"c", number(w.c)}, {"d", number(w.d)}}},
              {"residual", number(w.residual)},
              {"spread", nullptr},
              {"nodes", w.nodes},
              {"tolerance", number(w.tolerance)},
              {"ok", w.ok},
              {"note", w.note},
              {"determinant", number(w.determinant)}};
}

Json to_json(const Evidence& evidence) {
  Json out = Json::object();
  for (const auto& [key, r] : evidence)
    out[key] = Json{{"passed", r.passed}, {"residual", number(r.residual)}, {"detail", r.detail}};
  return out;
}

Json to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok},
              {"min_g", number(r.min_g)},
              {"min_abs_wronskian", number(r.min_abs_wronskian)},
              {"wronskian_sign", r.wronskian_sign},
              {"samples_used", r.samples_used},
              {"floor", number(r.floor)},
              {"reason", r.reason}};
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += "\n";
  char buf[40];
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) s += ",";
      s += buf;
    }
    s += "\n";
  }
  return s;
}

}  // namespace bmean::cli
