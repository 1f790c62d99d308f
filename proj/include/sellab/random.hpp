#pragma once

#include <cstdint>
#include <random>

#include "sellab/sets.hpp"

namespace sellab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
/// Independent deterministic stream seed for trial `index` of a run.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform in [-half_width, half_width]^dim (linear kinds) or uniform in the
/// geodesic ball of radius half_width about the origin (hyperbolic plane).
Point random_point(const GeodesicSpace& space, Rng& rng, double half_width = 1.0);

/// Random n-net with min gap >= 1e-3 diam, by rejection.
Net random_net(const GeodesicSpace& space, std::size_t n, Rng& rng, double half_width = 1.0);

/// Point at distance exactly `magnitude` from p in a uniformly random direction
/// of the coordinate frame (the model tangent plane in H^2).
Point random_displacement(const GeodesicSpace& space, const Point& p, double magnitude, Rng& rng);

/// Random unit Euclidean direction in R^dim.
Point random_unit(std::size_t dim, Rng& rng);

}  // namespace sellab
