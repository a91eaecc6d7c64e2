#include "tssos/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tssos {

bool in_convex_hull(std::span<const std::vector<double>> points, std::span<const double> target,
                    double tol) {
  const std::size_t n = target.size();
  const std::size_t np = points.size();
  if (np == 0) return false;
  const std::size_t rows = n + 1;
  // Columns: np structural, rows artificial, then rhs.
  const std::size_t cols = np + rows + 1;
  std::vector<double> t(rows * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };

  for (std::size_t r = 0; r < rows; ++r) {
    double rhs = r < n ? target[r] : 1.0;
    double sign = rhs < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < np; ++k) {
      if (points[k].size() != n) throw std::invalid_argument("point dimension mismatch");
      at(r, k) = sign * (r < n ? points[k][r] : 1.0);
    }
    at(r, np + r) = 1.0;
    at(r, cols - 1) = sign * rhs;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = np + r;

  // Reduced costs of the phase-one objective sum(artificials).
  std::vector<double> cost(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    if (c >= np && c < np + rows) continue;
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += at(r, c);
    cost[c] = -s;
  }

  const double eps = 1e-12;
  for (std::size_t iter = 0; iter < 50 * (np + rows); ++iter) {
    // Bland's rule: first column with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t c = 0; c + 1 < cols; ++c)
      if (cost[c] < -eps) {
        enter = c;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r) {
      double a = at(r, enter);
      if (a > eps) {
        double ratio = at(r, cols - 1) / a;
        if (ratio < best - eps || (leave != rows && std::abs(ratio - best) <= eps && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase one
    double piv = at(leave, enter);
    for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave) continue;
      double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(leave, c);
    }
    double f = cost[enter];
    for (std::size_t c = 0; c < cols; ++c) cost[c] -= f * at(leave, c);
    basis[leave] = enter;
  }

  // Residual = value of artificials remaining in the basis.
  double infeas = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] >= np) infeas += std::abs(at(r, cols - 1));
  return infeas <= tol;
}

}  // namespace tssos
