#pragma once

#include <cstdint>
#include <vector>

#include "sellab/chebyshev.hpp"

namespace sellab {

/// Chebyshev center set of a pair in l1: the part of the box spanned by x and
/// y on which ||t - x||_1 = ||x - y||_1 / 2. Its vertices (all coordinates but
/// one at a box bound) are returned as corner_points; `center` is the
/// midpoint of their bounding box.
CenterResult cheb_l1_pair(const Point& x, const Point& y);

/// Center set of an arbitrary finite set in l1 computed from the linear
/// program min r s.t. ||t - x_i||_1 <= r, with the optimal face as
/// {t : A t <= b}.
struct L1CenterSet {
  double radius = 0.0;
  std::vector<Point> vertices;
  Point representative;  // bounding-box midpoint of the vertices
  std::vector<std::vector<double>> A;
  std::vector<double> b;
};

L1CenterSet l1_center_set(const Net& net);

/// min ||a - c||_1 over a in the first set and c in the second.
double l1_set_distance(const L1CenterSet& p, const L1CenterSet& q);

enum class L1Reading {
  /// All shifts of the listing as printed.
  literal,
  /// All-zero and all-one corners shifted by -eps/n in every coordinate;
  /// the remaining pairs as printed. This is the variant meeting the bound.
  corrected,
};

/// The two 2n-point nets of the lower-bound example for dimension n.
NetPair l1_lower_bound_nets(std::size_t n, double eps, L1Reading reading);

struct L1LowerResult {
  double displacement = 0.0;  // distance between the two center sets
  double representative_displacement = 0.0;
  double vertex_hausdorff = 0.0;
  double hd = 0.0;  // Hausdorff distance of the input nets
  double bound = 0.0;
  bool pass = false;
  L1CenterSet first, second;
};

/// n in {2, 3, 4}; other dimensions are refused with InputError.
L1LowerResult l1_lower_bound_experiment(std::size_t n, double eps,
                                        L1Reading reading = L1Reading::corrected);

struct L1UpperRow {
  double eps = 0.0;
  double hd = 0.0;
  double displacement = 0.0;
  double ratio = 0.0;
};

struct L1UpperResult {
  std::vector<L1UpperRow> rows;
  double max_ratio = 0.0;
  double bound = 0.0;  // 4n
  int lp_mismatches = 0;  // corner sets disagreeing with the LP optimal face
  bool pass = false;
};

/// Random pairs in [0, 1]^n with perturbations of l1 size at most eps. The
/// ratio is the Hausdorff distance of corner sets over that of the pairs.
L1UpperResult l1_upper_bound_check(std::size_t n, int trials, double eps, std::uint64_t seed);

}  // namespace sellab
