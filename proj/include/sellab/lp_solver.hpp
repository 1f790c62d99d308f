#pragma once

#include <vector>

#include "sellab/core.hpp"

namespace sellab {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense two-phase simplex with Bland's rule: minimize c.x subject to
/// A x <= b, x free. Intended for the small systems of the l1 experiments.
LpResult solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b);

/// Vertices of the bounded polyhedron {x : A x <= b} in dimension <= 4,
/// found by intersecting every choice of dim constraints. Rows whose
/// maximum over the polyhedron stays below b - tol are skipped first.
std::vector<Point> enumerate_vertices(const std::vector<std::vector<double>>& A,
                                      const std::vector<double>& b, double tol = 1e-9);

}  // namespace sellab
