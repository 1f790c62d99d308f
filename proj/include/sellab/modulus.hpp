#pragma once

#include <vector>

#include "sellab/regression.hpp"
#include "sellab/space.hpp"

namespace sellab {

struct ModulusEstimate {
  double delta = 0.0;
  bool degenerate = false;  // l1: flat sphere faces
  double worst_angle = 0.0; // chord-center angle attaining the infimum
};

/// delta(eps) = inf { 1 - d(c, m(x,y))/r : d(c,x) = d(c,y) = r, d(x,y) = eps r }
/// over chords in the plane of the coordinate frame at c. Chords are swept
/// by their center angle on a uniform grid of `samples` angles starting at 0
/// and the best one is refined by a one-dimensional minimization.
ModulusEstimate convexity_modulus_estimate(const GeodesicSpace& space, const Point& c, double r,
                                           double eps, int samples);

struct ModulusFit {
  std::vector<double> eps;
  std::vector<double> delta;
  PowerFit fit;
  bool degenerate = false;
};

ModulusFit convexity_modulus_fit(const GeodesicSpace& space, const Point& c, double r,
                                 const std::vector<double>& eps_grid, int samples);

/// The fixed grid 2^-1, ..., 2^-6.
std::vector<double> default_modulus_grid();

}  // namespace sellab
