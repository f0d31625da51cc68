#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmean/analysis.hpp"
#include "bmean/generator.hpp"
#include "bmean/sampled_function.hpp"

namespace bmean {

/// Thresholds for the equality engine. Defaults are the library-wide ones.
struct ClassifyOptions {
  int grid = 21;
  FitOptions fit;
  double equality_tolerance = 1e-9;        // times (1 + domain width)
  double representation_tolerance = 1e-7;  // B = B_{w,1} check, times (1 + width)
  int canonical_nodes = 513;
  double quadrature_tolerance = 1e-10;
};

struct EqualityVerdict {
  bool equal = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int grid_size = 0;
  double worst_x = 0.0;
  double worst_y = 0.0;
};

/// One row of a grid comparison, in CSV column order x,y,meanA,meanB,diff.
struct GridRow {
  double x, y, mean_a, mean_b, diff;
};

/// Both means on grid x grid Chebyshev pairs of the common core, row-major.
std::vector<GridRow> compare_on_grid(const GeneratorPair& a, const GeneratorPair& b, int grid);

/// max |B_A - B_B| on the grid; equal iff <= tolerance * (1 + width).
EqualityVerdict means_equal_on_grid(const GeneratorPair& a, const GeneratorPair& b, int grid = 21,
                                    double tolerance = 1e-9);

struct AssertionResult {
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

/// Keyed by assertion label: "ii" ... "vii", plus "i" and "hk" when produced
/// by classify_equality.
using Evidence = std::map<std::string, AssertionResult>;

/// Evidence map together with every constant that was fitted for it.
struct AssertionReport {
  Evidence evidence;
  std::optional<ConstantFit> gamma;
  std::optional<ConstantFit> alpha;  // cubic Wronskian ratio of A
  std::optional<ConstantFit> beta;   // cubic Wronskian ratio of B
  std::optional<QuadraticFormFit> quad_a, quad_b;
  std::optional<PolynomialFit> poly_p, poly_q;
  std::optional<double> delta;
  std::optional<SampledFunction> w_table;
  std::optional<double> family_alpha, family_beta;  // parameters used for (v)
};

/// Checks every characterization of the non-equivalent equality branch:
///  ii   cubic Wronskian ratios constant and W_B = gamma W_A
///  iii  quadratic forms equal to 1 and gamma
///  iv   g = 1/sqrt(P(f/g)), k = 1/sqrt(Q(h/k)) and the integral chain with shift delta
///  v    both pairs equivalent to S/C families over the canonical w
///  vi   B_A = B_{w,1} = B_B for w = integral of W_A
///  vii  some monotone w with B_A = B_{w,1} = B_B
AssertionReport verify_assertions(const GeneratorPair& a, const GeneratorPair& b,
                                  const ClassifyOptions& opt = {});

enum class Tag { NotEqual, EquivalentGenerators, CommonQuasiarithmetic, Inconclusive };

std::string_view tag_name(Tag tag);

struct Classification {
  Tag tag = Tag::Inconclusive;
  EqualityVerdict verdict;
  std::optional<EquivalenceWitness> witness;
  std::optional<ConstantFit> gamma;
  std::optional<ConstantFit> alpha;
  std::optional<ConstantFit> beta;
  std::optional<QuadraticFormFit> quad_a, quad_b;
  std::optional<PolynomialFit> poly_p, poly_q;
  std::optional<double> delta;
  std::optional<SampledFunction> w_table;
  Evidence evidence;
};

/// Grid equality, then generator equivalence, then the common quasiarithmetic
/// representation. Equal means with neither mechanism confirmed give
/// Inconclusive. When both mechanisms hold the tag is EquivalentGenerators.
Classification classify_equality(const GeneratorPair& a, const GeneratorPair& b,
                                 const ClassifyOptions& opt = {});

/// Short human-readable report.
std::string summary(const Classification& c);

}  // namespace bmean
