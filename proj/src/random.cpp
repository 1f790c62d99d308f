#include "sellab/random.hpp"

#include <cmath>
#include <numbers>

namespace sellab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Point random_unit(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Point v(dim);
  for (;;) {
    double n = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = g(rng);
      n += v[i] * v[i];
    }
    if (n > 1e-20) return (1.0 / std::sqrt(n)) * v;
  }
}

Point random_point(const GeodesicSpace& space, Rng& rng, double half_width) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (space.kind() == SpaceKind::hyperbolic2) {
    // Area element sinh(r) dr gives cosh r - 1 uniform on [0, cosh R - 1].
    const double r = std::acosh(1.0 + u(rng) * (std::cosh(half_width) - 1.0));
    const double a = 2.0 * std::numbers::pi * u(rng);
    const double s = std::sinh(r);
    return GeodesicSpace::lift_spatial(s * std::cos(a), s * std::sin(a));
  }
  Point p(space.dim());
  for (double& c : p) c = half_width * (2.0 * u(rng) - 1.0);
  return p;
}

Net random_net(const GeodesicSpace& space, std::size_t n, Rng& rng, double half_width) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Net net;
    for (std::size_t i = 0; i < n; ++i) net.push_back(random_point(space, rng, half_width));
    if (n < 2 || min_gap(space, net) >= 1e-3 * diam(space, net)) return net;
  }
  throw NumericalError("random_net: rejection sampling failed");
}

Point random_displacement(const GeodesicSpace& space, const Point& p, double magnitude,
                          Rng& rng) {
  if (space.kind() == SpaceKind::hyperbolic2) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    return space.sphere_point(space.frame(p), magnitude, u(rng));
  }
  const Point dir = random_unit(space.dim(), rng);
  Point zero(space.dim());
  const double n = space.distance(zero, dir);
  return p + (magnitude / n) * dir;
}

}  // namespace sellab
