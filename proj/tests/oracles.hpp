#pragma once

#include <utility>
#include <vector>

#include "sellab/core.hpp"
#include "sellab/space.hpp"

namespace oracle {

using sellab::Point;
using Net = std::vector<Point>;

/// Arithmetic mean.
Point centroid(const Net& net);

/// Smallest enclosing Euclidean ball by Welzl's recursion (dimension <= 3).
struct Ball {
  Point center;
  double radius = 0.0;
};
Ball welzl(const Net& net);

/// Minimizer of sum_j ||x - a_j||_p^p by gradient descent with backtracking
/// from the centroid.
Point power_sum_minimizer(const Net& net, double p);
double power_sum(const Net& net, const Point& x, double p);

/// Minimizer of sum_j d^2(x, a_j) in the hyperbolic plane by gradient descent
/// on the spatial chart with numerical gradients.
Point hyperbolic_barycenter(const Net& net);

/// Distance from x to the hull of S in the hyperbolic plane. The hull is the
/// Euclidean hull in the Klein model; it is sampled on a barycentric grid which
/// is then refined around the best sample.
double hyperbolic_hull_distance(const Point& x, const Net& s);

/// Chebyshev center in the hyperbolic plane: the best covering candidate among
/// pair midpoints and triple circumcenters.
Ball hyperbolic_cheb(const Net& net);

/// Vertices of {t : ||t - x||_1 <= r, ||t - y||_1 <= r} by brute-force
/// intersection of constraint hyperplanes (dimension <= 3).
std::vector<Point> l1_pair_vertices(const Point& x, const Point& y, double r);

/// Hausdorff distance of finite point sets under the l1 norm.
double l1_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace oracle
