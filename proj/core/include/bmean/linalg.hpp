#pragma once

#include <span>
#include <vector>

namespace bmean {

/// Solution of a small dense least-squares problem min ||A c - y||.
struct LeastSquaresResult {
  std::vector<double> coefficients;
  std::vector<double> residuals;  // A c - y at every row
  double condition = 0.0;         // 1-norm condition number of the scaled normal matrix
  bool rank_deficient = false;
};

/// Condition numbers above this are flagged in fit diagnostics.
inline constexpr double kConditionWarning = 1e8;

/// Solves the n x n system M c = b (row-major M) by Gaussian elimination with
/// full pivoting. Returns false when a pivot underflows relative to the
/// largest entry.
bool solve_full_pivot(std::vector<double> m, std::vector<double> b, std::vector<double>& out);

/// Least squares through the normal equations, for a handful of columns.
/// Columns are rescaled to unit 2-norm before forming A^T A.
LeastSquaresResult least_squares(std::span<const std::vector<double>> columns,
                                 std::span<const double> target);

}  // namespace bmean
