#include "sellab/modulus.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace sellab {

namespace {

struct ChordDepth {
  const GeodesicSpace& space;
  Frame frame;
  double r;
  double eps;

  double chord(double phi, double alpha) const {
    return space.distance(space.sphere_point(frame, r, phi - alpha),
                          space.sphere_point(frame, r, phi + alpha));
  }

  // Half-angle alpha in [0, pi/2] with chord length eps * r.
  double half_angle(double phi) const {
    const double target = eps * r;
    auto g = [&](double a) { return chord(phi, a) - target; };
    const double hi = std::numbers::pi / 2;
    const double ghi = g(hi);
    if (ghi <= 0.0) return hi;
    std::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto br = boost::math::tools::toms748_solve(g, 0.0, hi, -target, ghi, tol, iters);
    return 0.5 * (br.first + br.second);
  }

  double depth(double phi) const {
    const double a = half_angle(phi);
    const Point x = space.sphere_point(frame, r, phi - a);
    const Point y = space.sphere_point(frame, r, phi + a);
    return 1.0 - space.distance(frame.origin, space.midpoint(x, y)) / r;
  }
};

}  // namespace

ModulusEstimate convexity_modulus_estimate(const GeodesicSpace& space, const Point& c, double r,
                                           double eps, int samples) {
  if (!(r > 0.0)) throw InputError("convexity_modulus: r must be positive");
  if (!(eps > 0.0 && eps <= 2.0)) throw InputError("convexity_modulus: eps must lie in (0, 2]");
  if (samples < 100) throw InputError("convexity_modulus: samples must be at least 100");
  space.validate(c);
  ModulusEstimate out;
  if (space.kind() == SpaceKind::l1) {
    out.degenerate = true;
    return out;
  }
  const ChordDepth cd{space, space.frame(c), r, eps};
  const double step = 2.0 * std::numbers::pi / samples;
  double best = std::numeric_limits<double>::infinity(), best_phi = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double phi = k * step;
    const double v = cd.depth(phi);
    if (v < best) best = v, best_phi = phi;
  }
  std::uintmax_t iters = 100;
  const auto r2 = boost::math::tools::brent_find_minima(
      [&](double phi) { return cd.depth(phi); }, best_phi - step, best_phi + step,
      std::numeric_limits<double>::digits / 2, iters);
  if (r2.second < best) best = r2.second, best_phi = r2.first;
  out.delta = std::max(0.0, best);
  out.worst_angle = best_phi;
  return out;
}

ModulusFit convexity_modulus_fit(const GeodesicSpace& space, const Point& c, double r,
                                 const std::vector<double>& eps_grid, int samples) {
  ModulusFit out;
  for (double e : eps_grid) {
    const ModulusEstimate m = convexity_modulus_estimate(space, c, r, e, samples);
    out.degenerate = out.degenerate || m.degenerate;
    out.eps.push_back(e);
    out.delta.push_back(m.delta);
  }
  if (!out.degenerate) out.fit = fit_power_law(out.eps, out.delta);
  return out;
}

std::vector<double> default_modulus_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 6; ++k) g.push_back(std::ldexp(1.0, -k));
  return g;
}

}  // namespace sellab
