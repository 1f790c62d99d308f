#include "sellab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sellab/chebyshev.hpp"
#include "sellab/mean_point.hpp"
#include "sellab/random.hpp"
#include "sellab/regression.hpp"

namespace sellab {

void SelectionConfig::validate() const {
  if (!(hull_tol > 0.0 && mp_tol > 0.0 && cheb_tol > 0.0))
    throw InputError("selection config: tolerances must be positive");
  if (max_n < 1 || max_n > kMaxNet) throw InputError("selection config: max_n must lie in [1, 8]");
  if (!(collapse_gap >= 0.0)) throw InputError("selection config: collapse_gap must be >= 0");
  for (const auto& [n, h] : holder_constants)
    if (!(h >= 0.0) || !std::isfinite(h))
      throw InputError("selection config: holder constants must be finite and >= 0");
}

Net collapse_net(const GeodesicSpace& space, const Net& sigma, double gap) {
  Net sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  Net out;
  for (const Point& p : sorted) {
    bool near = false;
    for (const Point& q : out)
      if (space.distance(p, q) <= gap) {
        near = true;
        break;
      }
    if (!near) out.push_back(p);
  }
  return out;
}

namespace {

struct Gaps {
  std::vector<double> g;
  double diam = 0.0;
  double min = 0.0;
};

Gaps hull_gaps(const GeodesicSpace& space, const Net& pts, double tol) {
  Gaps out;
  out.diam = diam(space, pts);
  out.min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.g.push_back(dist_to_hull(space, pts[i], without(pts, i), tol));
    out.min = std::min(out.min, out.g.back());
  }
  return out;
}

SelectionResult mp_sorted(const GeodesicSpace& space, const Net& pts, const SelectionConfig& cfg) {
  const std::size_t n = pts.size();
  if (n == 1) return {pts[0], "point", 0.0};
  if (n == 2) return {space.midpoint(pts[0], pts[1]), "midpoint", 0.0};
  const Gaps g = hull_gaps(space, pts, cfg.hull_tol);
  const double rho = 2.0 * g.min / g.diam;
  const Point b_sigma = mean_point(space, pts, cfg.mp_tol);
  if (rho >= 1.0) return {b_sigma, "mean_point", 1.0};
  std::vector<Point> subs;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::clamp(1.0 - 2.0 * g.g[i] / g.diam, 0.0, 1.0);
    if (w <= 0.0) continue;
    subs.push_back(mp_sorted(space, without(pts, i), cfg).point);
    weights.push_back(w);
  }
  const Point b_c = weighted_barycenter(space, subs, weights, cfg.mp_tol);
  return {space.geodesic_point(b_c, b_sigma, rho), "interpolated", rho};
}

SelectionResult cheb_sorted(const GeodesicSpace& space, const Net& pts,
                            const SelectionConfig& cfg) {
  const std::size_t n = pts.size();
  if (n == 1) return {pts[0], "point", 0.0};
  if (n == 2) return {space.midpoint(pts[0], pts[1]), "midpoint", 0.0};
  const auto it = cfg.holder_constants.find(n);
  if (it == cfg.holder_constants.end()) {
    std::ostringstream os;
    os << "select_cheb: no holder constant H_" << n << " in the configuration";
    throw InputError(os.str());
  }
  const Gaps g = hull_gaps(space, pts, cfg.hull_tol);
  const double lambda =
      std::clamp(std::sqrt(g.min / g.diam) / std::max(1.0, it->second), 0.0, 1.0);
  std::vector<Point> subs;
  for (std::size_t i = 0; i < n; ++i) subs.push_back(cheb_sorted(space, without(pts, i), cfg).point);
  const Point m_l = mean_point_multiset(space, subs, std::vector<int>(subs.size(), 1), cfg.mp_tol);
  const Point c = cheb_center(space, pts, cfg.cheb_tol).center;
  return {space.geodesic_point(m_l, c, lambda), "interpolated", lambda};
}

Net prepare(const GeodesicSpace& space, const Net& sigma, const SelectionConfig& cfg,
            const char* op) {
  cfg.validate();
  space.require_geodesics(op);
  if (sigma.empty()) throw InputError(std::string(op) + ": empty net");
  for (const Point& p : sigma) space.validate(p);
  Net pts = collapse_net(space, sigma, cfg.collapse_gap);
  if (pts.size() > cfg.max_n) {
    std::ostringstream os;
    os << op << ": net has " << pts.size() << " points, max_n is " << cfg.max_n;
    throw InputError(os.str());
  }
  return pts;
}

}  // namespace

SelectionResult select_mp(const GeodesicSpace& space, const Net& sigma,
                          const SelectionConfig& cfg) {
  return mp_sorted(space, prepare(space, sigma, cfg, "select_mp"), cfg);
}

SelectionResult select_cheb(const GeodesicSpace& space, const Net& sigma,
                            const SelectionConfig& cfg) {
  return cheb_sorted(space, prepare(space, sigma, cfg, "select_cheb"), cfg);
}

Selector parse_selector(const std::string& s) {
  if (s == "select_mp") return Selector::select_mp;
  if (s == "select_cheb") return Selector::select_cheb;
  if (s == "mean_point") return Selector::mean_point;
  if (s == "cheb") return Selector::cheb;
  throw InputError("unknown selector '" + s + "'");
}

std::string selector_name(Selector s) {
  switch (s) {
    case Selector::select_mp: return "select_mp";
    case Selector::select_cheb: return "select_cheb";
    case Selector::mean_point: return "mean_point";
    case Selector::cheb: return "cheb";
  }
  return "";
}

Point apply_selector(const GeodesicSpace& space, Selector selector, const Net& sigma,
                     const SelectionConfig& cfg) {
  switch (selector) {
    case Selector::select_mp: return select_mp(space, sigma, cfg).point;
    case Selector::select_cheb: return select_cheb(space, sigma, cfg).point;
    case Selector::mean_point: return mean_point(space, sigma, cfg.mp_tol);
    case Selector::cheb: return cheb_center(space, sigma, cfg.cheb_tol).center;
  }
  return {};
}

LipschitzReport empirical_lipschitz(const GeodesicSpace& space, Selector selector, std::size_t n,
                                    int trials, double perturbation_scale, std::uint64_t seed,
                                    PerturbMode mode, const SelectionConfig& cfg, Exec exec) {
  if (trials < 100) throw InputError("empirical_lipschitz: trials must be at least 100");
  if (!(perturbation_scale > 0.0)) throw InputError("empirical_lipschitz: scale must be positive");
  if (n < 1 || n > cfg.max_n) throw InputError("empirical_lipschitz: n out of range");
  double solver_tol = cfg.mp_tol;
  if (selector == Selector::cheb) solver_tol = cfg.cheb_tol;
  if (selector == Selector::select_mp || selector == Selector::select_cheb)
    solver_tol = std::max({cfg.mp_tol, cfg.hull_tol, cfg.cheb_tol});

  LipschitzReport rep;
  rep.ratios.assign(static_cast<std::size_t>(trials), std::numeric_limits<double>::quiet_NaN());
  run_trials(rep.ratios.size(), exec, [&](std::size_t t) {
    Rng rng(trial_seed(seed, t));
    const Net s = random_net(space, n, rng);
    double scale = perturbation_scale * std::ldexp(1.0, -2 * static_cast<int>(t % 4));
    if (mode == PerturbMode::within_half_gap && n > 1)
      scale = std::min(scale, 0.45 * min_gap(space, s));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Net sp;
    for (const Point& p : s) sp.push_back(random_displacement(space, p, scale * (1.0 - u(rng)), rng));
    if (n > 1 && !(min_gap(space, sp) > cfg.collapse_gap)) return;
    const double hd = hausdorff(space, s, sp);
    if (hd < 10.0 * solver_tol) return;
    const Point a = apply_selector(space, selector, s, cfg);
    const Point b = apply_selector(space, selector, sp, cfg);
    rep.ratios[t] = space.distance(a, b) / hd;
  });
  std::vector<double> valid;
  for (std::size_t t = 0; t < rep.ratios.size(); ++t) {
    const double r = rep.ratios[t];
    if (std::isnan(r)) {
      ++rep.excluded;
      continue;
    }
    valid.push_back(r);
    if (r > rep.max_ratio || valid.size() == 1) {
      rep.max_ratio = r;
      rep.worst_trial = t;
    }
  }
  rep.counted = valid.size();
  rep.worst_seed = trial_seed(seed, rep.worst_trial);
  if (!valid.empty()) rep.p99 = quantile(valid, 0.99);
  return rep;
}

ConsistencyReport subnet_consistency_check(const GeodesicSpace& space, const Net& sigma,
                                           std::size_t index, double eps,
                                           const SelectionConfig& cfg, int directions) {
  if (sigma.size() < 2) throw InputError("subnet_consistency_check: need at least two points");
  if (index >= sigma.size()) throw InputError("subnet_consistency_check: index out of range");
  if (!(eps >= 0.0)) throw InputError("subnet_consistency_check: eps must be nonnegative");
  ConsistencyReport rep;
  if (eps == 0.0) return rep;
  const Point base = select_mp(space, sigma, cfg).point;
  const Frame f = space.frame(sigma[index]);
  for (int k = 0; k < directions; ++k) {
    Net moved = sigma;
    moved[index] = space.sphere_point(f, eps, 2.0 * std::numbers::pi * k / directions);
    const Point p = select_mp(space, moved, cfg).point;
    rep.max_displacement = std::max(rep.max_displacement, space.distance(base, p));
  }
  rep.constant = rep.max_displacement / eps;
  rep.pass = rep.constant <= 0.5 + 0.05;
  return rep;
}

}  // namespace sellab
