// Small dense phase-one simplex used for convex-hull membership tests.
#pragma once

#include <span>
#include <vector>

namespace tssos {

// True when target is a convex combination of points, i.e. the LP
//   lambda >= 0, sum(lambda) = 1, sum(lambda_k * points[k]) = target
// is feasible up to an equality residual of tol.
bool in_convex_hull(std::span<const std::vector<double>> points, std::span<const double> target,
                    double tol = 1e-9);

}  // namespace tssos
