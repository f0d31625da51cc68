#pragma once

#include <string>
#include <vector>

#include "bmean/decide.hpp"
#include "json.hpp"

namespace bmean::cli {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, everything else as null.
Json number(double v);

Json to_json(const ConstantFit& fit, const char* kind);
Json to_json(const QuadraticFormFit& fit);
Json to_json(const PolynomialFit& fit, const char* kind);
Json to_json(const EquivalenceWitness& w);
Json to_json(const Evidence& evidence);
Json to_json(const ValidationReport& r);

template <class T, class... Extra>
Json optional_json(const std::optional<T>& v, Extra... extra) {
  return v ? to_json(*v, extra...) : Json(nullptr);
}

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// RFC 4180 style, %.17g numbers, LF line ends.
std::string to_csv(const Table& t);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace bmean::cli
