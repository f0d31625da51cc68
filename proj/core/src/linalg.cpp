#include "bmean/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bmean {

bool solve_full_pivot(std::vector<double> m, std::vector<double> b, std::vector<double>& out) {
  const std::size_t n = b.size();
  if (m.size() != n * n) throw std::invalid_argument("solve_full_pivot: shape mismatch");
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), 0);
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(m[i * n + j]) > best) best = std::abs(m[i * n + j]), pr = i, pc = j;
    if (best <= 1e-15 * scale) return false;
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[pr * n + j]);
      std::swap(b[k], b[pr]);
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i * n + k], m[i * n + pc]);
      std::swap(col[k], col[pc]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= factor * m[k * n + j];
      b[i] -= factor * b[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= m[k * n + j] * y[j];
    y[k] = acc / m[k * n + k];
  }
  out.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) out[col[k]] = y[k];
  return true;
}

namespace {

double norm1(const std::vector<double>& m, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(m[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

LeastSquaresResult least_squares(std::span<const std::vector<double>> columns,
                                 std::span<const double> target) {
  const std::size_t n = columns.size();
  const std::size_t rows = target.size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("least_squares: ragged columns");
  if (rows < n) throw std::invalid_argument("least_squares: fewer rows than unknowns");

  LeastSquaresResult result;
  std::vector<double> scale(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (double v : columns[j]) s += v * v;
    scale[j] = s > 0.0 ? 1.0 / std::sqrt(s) : 1.0;
  }

  std::vector<double> normal(n * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += columns[i][r] * columns[j][r];
      normal[i * n + j] = normal[j * n + i] = s * scale[i] * scale[j];
    }
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += columns[i][r] * target[r];
    rhs[i] = s * scale[i];
  }

  std::vector<double> sol;
  if (!solve_full_pivot(normal, rhs, sol)) {
    result.rank_deficient = true;
    result.condition = INFINITY;
    return result;
  }

  // Explicit inverse for the condition estimate; n is at most 3 here.
  std::vector<double> inverse(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0), x;
    e[k] = 1.0;
    solve_full_pivot(normal, e, x);
    for (std::size_t i = 0; i < n; ++i) inverse[i * n + k] = x[i];
  }
  result.condition = norm1(normal, n) * norm1(inverse, n);
  result.rank_deficient = !(result.condition < 1e15);

  result.coefficients.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.coefficients[j] = sol[j] * scale[j];
  result.residuals.assign(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = -target[r];
    for (std::size_t j = 0; j < n; ++j) s += result.coefficients[j] * columns[j][r];
    result.residuals[r] = s;
  }
  return result;
}

}  // namespace bmean
