#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "sellab/regression.hpp"
#include "sellab/sets.hpp"

namespace sellab {

struct CenterResult {
  Point center;
  double radius = 0.0;
  double radius_lower = 0.0;  // certified lower bound on the radius
  std::vector<std::size_t> support;
  /// Vertices of the center set when it is not a point (l1 pairs).
  std::vector<Point> corner_points;
  int iterations = 0;
};

/// Minimizer of f(x) = max_i d(x, x_i).
///
/// A farthest-point geodesic descent from a cheap geodesic mean gives a warm
/// start. It is followed by an exact polish: for subsets of the near-active
/// points the stationarity system sum mu_j grad d_j = 0, equal distances,
/// sum mu_j = 1 is solved by damped Newton in chart coordinates. A subset
/// with nonnegative multipliers whose ball covers every point is optimal.
CenterResult cheb_center(const GeodesicSpace& space, const Net& sigma, double tol);

struct SupportReport {
  std::vector<std::size_t> subset;
  std::size_t claimed_bound = 0;  // 2d - 1 plus a slack of d, Euclidean only
  bool bound_ok = true;
};

/// Greedy minimal subset that reproduces the center to 10 tol and the radius to tol.
SupportReport support_reduction(const GeodesicSpace& space, const Net& sigma,
                                const CenterResult& result, double tol);

struct NetPair {
  Net sigma;
  Net sigma_prime;
};

/// sigma = {x, y, z} with z on the sphere of radius d(x,y)/2 about m(x,y), at
/// angle theta from y, and sigma' = {x, y, z'} with z' on the ray from x
/// through z at distance d(x,z) + eps.
NetPair degenerate_triple(const GeodesicSpace& space, const Point& x, const Point& y,
                          double theta, double eps);

/// Angle theta at which y lies exactly on the sphere with diameter [x, z'],
/// so that cheb(sigma) = m(x, y) and cheb(sigma') = m(x, z').
double diametral_theta(const GeodesicSpace& space, const Point& x, const Point& y, double eps);

using PairGenerator = std::function<NetPair(double eps)>;

/// Degenerate triples with theta tied to eps through diametral_theta.
PairGenerator coupled_triple_family(const GeodesicSpace& space, const Point& x, const Point& y);
/// Degenerate triples at a fixed theta.
PairGenerator fixed_theta_family(const GeodesicSpace& space, const Point& x, const Point& y,
                                 double theta);
/// Well-separated acute triple with one vertex moved transversally by eps.
PairGenerator lipschitz_family(const GeodesicSpace& space);

struct RegularitySample {
  double eps = 0.0;
  double hd = 0.0;
  double displacement = 0.0;
  double ratio = 0.0;  // displacement / hd
  double diam = 0.0;
  bool excluded = false;
};

struct RegularityReport {
  std::vector<RegularitySample> samples;
  PowerFit fit;
  double holder_constant = 0.0;  // max displacement / sqrt(diam * hd)
  double span_octaves = 0.0;     // log2(max hd / min hd) over fitted samples
  bool nonlinear = false;        // r^2 below 0.98
  bool valid = false;            // enough samples spanning 3 octaves
};

/// Slope of log displacement against log Hd. Samples with displacement below
/// 10 tol are excluded. Requires tol <= min(eps_grid) / 100.
RegularityReport holder_exponent_estimate(const GeodesicSpace& space,
                                          const PairGenerator& generator,
                                          const std::vector<double>& eps_grid, double tol);

/// Grid scale * 2^-4, ..., scale * 2^-14.
std::vector<double> dyadic_grid(double scale, int first = 4, int last = 14);

/// max d(cheb(s), cheb(s')) / sqrt(diam(s) Hd(s, s')) over random n-nets and
/// the coupled degenerate family; the H_n consumed by the selection module.
double estimate_holder_constant(const GeodesicSpace& space, std::size_t n, int trials,
                                std::uint64_t seed, double tol);

}  // namespace sellab
