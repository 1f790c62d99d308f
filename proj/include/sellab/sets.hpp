#pragma once

#include <vector>

#include "sellab/space.hpp"

namespace sellab {

/// Finite set of pairwise-distinct points.
using Net = std::vector<Point>;

struct WeightedNet {
  std::vector<Point> points;
  std::vector<double> masses;
};

/// Throws InputError unless `net` is nonempty, valid for `space`, and has
/// pairwise-distinct points.
void validate_net(const GeodesicSpace& space, const Net& net);
void validate_weighted(const GeodesicSpace& space, const WeightedNet& net);

double diam(const GeodesicSpace& space, const Net& net);
double min_gap(const GeodesicSpace& space, const Net& net);
double hausdorff(const GeodesicSpace& space, const Net& a, const Net& b);
/// All points except index `skip`.
Net without(const Net& net, std::size_t skip);

struct HullDistance {
  double distance = 0.0;  // attained by `nearest`, an upper bound
  double lower = 0.0;     // certified lower bound
  Point nearest;
  std::vector<double> weights;
  int iterations = 0;
};

/// Distance from x to the convex hull of S, to within tol.
///
/// Euclidean hulls are solved exactly by projecting onto the affine hulls of
/// affinely independent subsets. Planar hulls (lp in dimension <= 2 and the
/// hyperbolic plane, whose hull is the Euclidean hull of the Klein
/// coordinates) are zero inside, by an LP membership test, and otherwise the
/// distance to the nearest boundary segment. lp in higher dimension runs
/// away-step Frank-Wolfe on the coefficient simplex with the duality gap as
/// the bracket.
HullDistance dist_to_hull_bracket(const GeodesicSpace& space, const Point& x, const Net& S,
                                  double tol, int max_iter = 20000);
double dist_to_hull(const GeodesicSpace& space, const Point& x, const Net& S, double tol);

}  // namespace sellab
