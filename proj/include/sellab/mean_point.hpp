#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sellab/sets.hpp"

namespace sellab {

/// Audit record of the top-level rounds sigma, sigma^1, sigma^2, ...
struct MpTrace {
  std::vector<Net> rounds;
  Point final;
  /// ratios[k] = max over point pairs of d(x^{k+1}_i, x^{k+1}_j) / d(x^k_i, x^k_j),
  /// restricted to pairs whose previous distance is above the noise floor.
  /// NaN when no pair qualifies.
  std::vector<double> ratios;
  bool violation = false;
  std::uint64_t midpoints = 0;  // geodesic midpoints evaluated in total
};

struct MpOptions {
  double ratio_slack = 1e-9;
  int max_rounds = 200;
  bool record_rounds = true;
  /// Run the top-level sub-net computations of each round concurrently.
  bool parallel = false;
};

struct MpResult {
  Point point;
  MpTrace trace;
};

/// Iterated mean point: each round replaces every point by the mean point of
/// the other n-1, until the diameter drops below tol. Sub-calls use tol/(4n).
/// The input is sorted once so the result is exactly permutation invariant.
/// Cost grows like n! times a polylog; n <= 6 is desk scale.
MpResult mean_point_net(const GeodesicSpace& space, const Net& sigma, double tol,
                        const MpOptions& opts = {});
Point mean_point(const GeodesicSpace& space, const Net& sigma, double tol);

/// Same recursion on a multiset given as distinct points with repetition counts.
Point mean_point_multiset(const GeodesicSpace& space, const std::vector<Point>& points,
                          const std::vector<int>& counts, double tol,
                          std::uint64_t* midpoints = nullptr);

struct WeightedMpResult {
  Point point;
  int denominator = 1;
  std::vector<int> counts;
  double mass_error = 0.0;  // max |m_i - counts_i / denominator|
};

/// Mean point of a weighted net through expansion into equal-mass copies.
/// Masses must agree with some multiple of 1/q, q <= denominator_cap, to 1e-9.
WeightedMpResult mean_point_weighted(const GeodesicSpace& space, const WeightedNet& sigma,
                                     double tol, int denominator_cap = 8);

using NetSampler = std::function<Net(double eps)>;

struct CompactResult {
  Point point;
  std::vector<Point> iterates;
  std::vector<double> displacements;
  std::vector<std::size_t> net_sizes;
  bool warning = false;
  std::string message;
};

/// Mean points of successively finer eps-nets of a region.
CompactResult mean_point_compact(const GeodesicSpace& space, const NetSampler& region,
                                 const std::vector<double>& eps_schedule, double tol);

/// eps-net of the geodesic ball B(center, radius): the center plus a ring of
/// k points (k <= 7) at the radius minimizing the covering radius. Throws
/// InputError when eps is below what 8 points can cover.
NetSampler ball_sampler(const GeodesicSpace& space, const Point& center, double radius);
/// eps-net of the box [lo, hi]^dim made of cell centers of a uniform grid.
NetSampler box_sampler(const GeodesicSpace& space, double lo, double hi);
/// Covering radius of `net` over `region` estimated on a dense sample.
double covering_radius(const GeodesicSpace& space, const Net& net, const Net& dense_region);

struct PerturbationReport {
  double shift = 0.0;         // d(mp(sigma), mp(sigma u extra))
  double max_distance = 0.0;  // max_{i,j} d(x_i, y_j)
  double factor = 0.0;        // k / (n + k)
  double bound = 0.0;         // max_distance * factor
  double ratio = 0.0;         // shift / max_distance
  bool pass = true;
};

PerturbationReport perturbation_bound_check(const GeodesicSpace& space, const Net& sigma,
                                            const Net& extra, double tol);

struct MassBoundReport {
  double shift = 0.0;
  double bound = 0.0;  // diam * sum |m_i - m'_i|
  bool pass = true;
};

/// Displacement between weighted mean points for two mass vectors on the
/// same points against diam(sigma) * ||m - m'||_1, slack 3 tol.
MassBoundReport weighted_mass_bound_check(const GeodesicSpace& space, const Net& points,
                                          const std::vector<double>& m1,
                                          const std::vector<double>& m2, double tol,
                                          int denominator_cap = 8);

/// Weighted barycenter: the affine weighted average in the linear kinds and
/// the weighted Frechet mean argmin sum w_i d^2(., x_i) in H^2, found by
/// fixed-point iteration through the exponential map.
Point weighted_barycenter(const GeodesicSpace& space, const std::vector<Point>& points,
                          const std::vector<double>& weights, double tol);

}  // namespace sellab
