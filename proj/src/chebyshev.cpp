#include "sellab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "sellab/random.hpp"

namespace sellab {

namespace {

double max_dist(const GeodesicSpace& s, const Point& x, const Net& net, std::size_t* arg = nullptr) {
  double best = -1.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double d = s.distance(x, net[i]);
    if (d > best) {
      best = d;
      if (arg) *arg = i;
    }
  }
  return best;
}

struct Candidate {
  Point center;
  double radius = 0.0;
  bool ok = false;
};

// Newton solve of the stationarity system for the points in `sub`.
Candidate kkt_center(const GeodesicSpace& s, const Net& sub, const Point& start, double scale) {
  const std::size_t D = s.chart_dim();
  const std::size_t m = sub.size();
  const std::size_t N = D + m;
  Eigen::VectorXd z(N);
  const Point u0 = s.to_chart(start);
  for (std::size_t i = 0; i < D; ++i) z[i] = u0[i];
  for (std::size_t j = 0; j < m; ++j) z[D + j] = 1.0 / m;

  auto point_of = [&](const Eigen::VectorXd& v) {
    Point u(D);
    for (std::size_t i = 0; i < D; ++i) u[i] = v[i];
    return s.from_chart(u);
  };
  auto residual = [&](const Eigen::VectorXd& v) {
    const Point x = point_of(v);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(N);
    const double d0 = s.distance(x, sub[0]);
    double msum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const Point g = s.distance_gradient(x, sub[j]);
      for (std::size_t i = 0; i < D; ++i) F[i] += v[D + j] * g[i];
      if (j > 0) F[D + j - 1] = (s.distance(x, sub[j]) - d0) / scale;
      msum += v[D + j];
    }
    F[N - 1] = msum - 1.0;
    return F;
  };

  Eigen::VectorXd F = residual(z);
  double fn = F.norm();
  const double h = 1e-6 * scale;
  for (int it = 0; it < 80 && fn > 1e-14; ++it) {
    const Point x = point_of(z);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    std::vector<Point> g(m);
    for (std::size_t j = 0; j < m; ++j) g[j] = s.distance_gradient(x, sub[j]);
    for (std::size_t k = 0; k < D; ++k) {
      Eigen::VectorXd zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      const Point xp = point_of(zp), xm = point_of(zm);
      for (std::size_t j = 0; j < m; ++j) {
        const Point gp = s.distance_gradient(xp, sub[j]);
        const Point gm = s.distance_gradient(xm, sub[j]);
        for (std::size_t i = 0; i < D; ++i) J(i, k) += z[D + j] * (gp[i] - gm[i]) / (2.0 * h);
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < D; ++i) J(i, D + j) = g[j][i];
      if (j > 0)
        for (std::size_t k = 0; k < D; ++k) J(D + j - 1, k) = (g[j][k] - g[0][k]) / scale;
      J(N - 1, D + j) = 1.0;
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
    if (!step.allFinite()) break;
    double a = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls, a *= 0.5) {
      const Eigen::VectorXd zn = z + a * step;
      const Eigen::VectorXd Fn = residual(zn);
      if (Fn.allFinite() && Fn.norm() < (1.0 - 1e-4 * a) * fn) {
        z = zn;
        F = Fn;
        fn = Fn.norm();
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  Candidate c;
  if (!(fn <= 1e-10)) return c;
  for (std::size_t j = 0; j < m; ++j)
    if (z[D + j] < -1e-9) return c;
  c.center = point_of(z);
  c.radius = max_dist(s, c.center, sub);
  c.ok = true;
  return c;
}

bool covers(const GeodesicSpace& s, const Candidate& c, const Net& net) {
  const double limit = c.radius * (1.0 + 1e-12) + 1e-300;
  for (const Point& p : net)
    if (s.distance(c.center, p) > limit) return false;
  return true;
}

// Calls f(indices) for each size-k subset of {0..m-1}; stops when f returns true.
template <class F>
bool for_subsets(std::size_t m, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

CenterResult solve_sorted(const GeodesicSpace& s, const Net& pts, double tol) {
  const std::size_t n = pts.size();
  CenterResult res;
  if (n == 1) {
    res.center = pts[0];
    res.support = {0};
    return res;
  }
  if (n == 2) {
    res.center = s.midpoint(pts[0], pts[1]);
    res.radius = res.radius_lower = 0.5 * s.distance(pts[0], pts[1]);
    res.support = {0, 1};
    return res;
  }
  const double dm = diam(s, pts);
  const double r_lo = 0.5 * dm;

  // Warm start: inductive geodesic mean, then farthest-point descent.
  Point x = pts[0];
  for (std::size_t j = 1; j < n; ++j) x = s.geodesic_point(x, pts[j], 1.0 / (j + 1.0));
  double fx = max_dist(s, x, pts);
  double eta = 0.5 * (fx - r_lo);
  int it = 0;
  for (; it < 5000 && eta >= tol; ++it) {
    std::size_t far = 0;
    const double dfar = max_dist(s, x, pts, &far);
    const Point y = s.geodesic_point(x, pts[far], std::min(1.0, eta / dfar));
    const double fy = max_dist(s, y, pts);
    if (fy < fx) {
      x = y;
      fx = fy;
      eta = std::min(eta, 0.5 * (fx - r_lo));
    } else {
      eta *= 0.5;
    }
  }
  res.iterations = it;

  // Exact polish over subsets of the points nearest to being active.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = s.distance(x, pts[i]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
  const std::size_t D = s.chart_dim();
  const double scale = std::max(dm, 1e-300);
  for (std::size_t m = std::min(n, D + 2); m <= n; ++m) {
    Candidate best;
    std::vector<std::size_t> support;
    for (std::size_t k = 2; k <= std::min(D + 1, m) && !best.ok; ++k) {
      for_subsets(m, k, [&](const std::vector<std::size_t>& idx) {
        Net sub;
        for (std::size_t i : idx) sub.push_back(pts[order[i]]);
        Candidate c;
        if (k == 2) {
          c.center = s.midpoint(sub[0], sub[1]);
          c.radius = 0.5 * s.distance(sub[0], sub[1]);
          c.ok = true;
        } else {
          c = kkt_center(s, sub, x, scale);
        }
        if (!c.ok || !covers(s, c, pts)) return false;
        best = c;
        support.clear();
        for (std::size_t i : idx) support.push_back(order[i]);
        return true;
      });
    }
    if (best.ok) {
      res.center = best.center;
      res.radius = max_dist(s, best.center, pts);
      res.radius_lower = best.radius;
      std::sort(support.begin(), support.end());
      res.support = support;
      return res;
    }
  }
  if (fx - r_lo <= tol) {
    res.center = x;
    res.radius = fx;
    res.radius_lower = r_lo;
    for (std::size_t i = 0; i < n; ++i)
      if (dist[i] >= fx - tol) res.support.push_back(i);
    return res;
  }
  std::ostringstream os;
  os << "cheb_center did not converge; radius bracket [" << r_lo << ", " << fx << "]";
  throw NumericalError(os.str(), r_lo, fx);
}

}  // namespace

CenterResult cheb_center(const GeodesicSpace& space, const Net& sigma, double tol) {
  space.require_geodesics("cheb_center");
  if (!(tol > 0.0)) throw InputError("cheb_center: tol must be positive");
  validate_net(space, sigma);
  // Canonical order makes the result independent of the input order.
  std::vector<std::size_t> perm(sigma.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });
  Net sorted;
  for (std::size_t i : perm) sorted.push_back(sigma[i]);
  CenterResult r = solve_sorted(space, sorted, tol);
  for (std::size_t& i : r.support) i = perm[i];
  std::sort(r.support.begin(), r.support.end());
  return r;
}

SupportReport support_reduction(const GeodesicSpace& space, const Net& sigma,
                                const CenterResult& result, double tol) {
  SupportReport rep;
  std::vector<std::size_t> keep(sigma.size());
  std::iota(keep.begin(), keep.end(), 0);
  // Try dropping points nearest to the center first.
  std::vector<double> d(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) d[i] = space.distance(result.center, sigma[i]);
  bool changed = true;
  while (changed && keep.size() > 1) {
    changed = false;
    std::vector<std::size_t> order = keep;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    for (std::size_t drop : order) {
      Net sub;
      std::vector<std::size_t> rest;
      for (std::size_t i : keep)
        if (i != drop) sub.push_back(sigma[i]), rest.push_back(i);
      const CenterResult c = cheb_center(space, sub, tol);
      if (std::abs(c.radius - result.radius) < tol &&
          space.distance(c.center, result.center) < 10.0 * tol) {
        keep = rest;
        changed = true;
        break;
      }
    }
  }
  rep.subset = keep;
  if (space.kind() == SpaceKind::euclidean) {
    const std::size_t dim = space.dim();
    rep.claimed_bound = 2 * dim - 1 + dim;
    rep.bound_ok = keep.size() <= rep.claimed_bound;
  }
  return rep;
}

NetPair degenerate_triple(const GeodesicSpace& space, const Point& x, const Point& y,
                          double theta, double eps) {
  space.require_geodesics("degenerate_triple");
  space.validate(x);
  space.validate(y);
  if (!(theta > 0.0) || theta >= std::numbers::pi)
    throw InputError("degenerate_triple: theta must lie in (0, pi); theta = 0 gives z = y");
  if (!(eps >= 0.0)) throw InputError("degenerate_triple: eps must be nonnegative");
  if (!(space.distance(x, y) > 0.0)) throw InputError("degenerate_triple: x and y coincide");
  const Point m = space.midpoint(x, y);
  const Frame f = space.frame(m, y);
  const Point z = space.sphere_point(f, 0.5 * space.distance(x, y), theta);
  NetPair out{{x, y, z}, {x, y, z}};
  if (eps > 0.0) {
    const double dxz = space.distance(x, z);
    out.sigma_prime[2] = space.geodesic_extend(x, z, (dxz + eps) / dxz);
  }
  return out;
}

double diametral_theta(const GeodesicSpace& space, const Point& x, const Point& y, double eps) {
  if (!(eps > 0.0)) throw InputError("diametral_theta: eps must be positive");
  auto g = [&](double th) {
    const NetPair p = degenerate_triple(space, x, y, th, eps);
    const Point& zp = p.sigma_prime[2];
    return space.distance(space.midpoint(x, zp), y) - 0.5 * space.distance(x, zp);
  };
  double lo = 1e-12, hi = std::numbers::pi / 2;
  double glo = g(lo), ghi = g(hi);
  if (!(glo < 0.0 && ghi > 0.0))
    throw NumericalError("diametral_theta: no sign change on (0, pi/2)", glo, ghi);
  std::uintmax_t iters = 300;
  const auto br = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  // Prefer the side where y is inside or on the ball of {x, z'}.
  return g(br.second) <= 0.0 ? br.second : br.first;
}

PairGenerator coupled_triple_family(const GeodesicSpace& space, const Point& x, const Point& y) {
  return [space, x, y](double eps) {
    return degenerate_triple(space, x, y, diametral_theta(space, x, y, eps), eps);
  };
}

PairGenerator fixed_theta_family(const GeodesicSpace& space, const Point& x, const Point& y,
                                 double theta) {
  return [space, x, y, theta](double eps) { return degenerate_triple(space, x, y, theta, eps); };
}

PairGenerator lipschitz_family(const GeodesicSpace& space) {
  space.require_geodesics("lipschitz_family");
  Net base;
  if (space.kind() == SpaceKind::hyperbolic2) {
    base = {GeodesicSpace::lift_spatial(-0.6, 0.0), GeodesicSpace::lift_spatial(0.6, 0.0),
            GeodesicSpace::lift_spatial(0.1, 0.8)};
  } else {
    Point a(space.dim()), b(space.dim()), c(space.dim());
    a[0] = -1.0;
    b[0] = 1.0;
    c[0] = 0.2;
    if (space.dim() > 1) a[1] = -0.1, b[1] = -0.2, c[1] = 1.3;
    base = {a, b, c};
  }
  return [space, base](double eps) {
    NetPair p{base, base};
    const Frame f = space.frame(base[2]);
    p.sigma_prime[2] = space.sphere_point(f, eps, 0.0);
    return p;
  };
}

std::vector<double> dyadic_grid(double scale, int first, int last) {
  std::vector<double> g;
  for (int k = first; k <= last; ++k) g.push_back(scale * std::ldexp(1.0, -k));
  return g;
}

RegularityReport holder_exponent_estimate(const GeodesicSpace& space,
                                          const PairGenerator& generator,
                                          const std::vector<double>& eps_grid, double tol) {
  if (eps_grid.empty()) throw InputError("holder_exponent_estimate: empty eps grid");
  const double emin = *std::min_element(eps_grid.begin(), eps_grid.end());
  if (!(tol > 0.0) || tol > emin / 100.0)
    throw InputError("holder_exponent_estimate: solver tol must be at most min(eps)/100");
  RegularityReport rep;
  std::vector<double> hs, ds;
  for (double eps : eps_grid) {
    const NetPair p = generator(eps);
    RegularitySample s;
    s.eps = eps;
    s.hd = hausdorff(space, p.sigma, p.sigma_prime);
    s.diam = diam(space, p.sigma);
    const CenterResult a = cheb_center(space, p.sigma, tol);
    const CenterResult b = cheb_center(space, p.sigma_prime, tol);
    s.displacement = space.distance(a.center, b.center);
    s.ratio = s.hd > 0.0 ? s.displacement / s.hd : 0.0;
    s.excluded = s.displacement < 10.0 * tol || !(s.hd > 0.0);
    if (!s.excluded) {
      hs.push_back(s.hd);
      ds.push_back(s.displacement);
      rep.holder_constant =
          std::max(rep.holder_constant, s.displacement / std::sqrt(s.diam * s.hd));
    }
    rep.samples.push_back(s);
  }
  if (hs.size() >= 2) {
    rep.fit = fit_power_law(hs, ds);
    const auto [lo, hi] = std::minmax_element(hs.begin(), hs.end());
    rep.span_octaves = std::log2(*hi / *lo);
    rep.nonlinear = rep.fit.r2 < 0.98;
    rep.valid = hs.size() >= 3 && rep.span_octaves >= 3.0;
  }
  return rep;
}

double estimate_holder_constant(const GeodesicSpace& space, std::size_t n, int trials,
                                std::uint64_t seed, double tol) {
  double h = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const Net s = random_net(space, n, rng);
    const double dm = diam(space, s);
    const double mag = dm * std::ldexp(1.0, -2 - (t % 12));
    Net sp = s;
    const std::size_t who = static_cast<std::size_t>(t) % n;
    sp[who] = random_displacement(space, s[who], mag, rng);
    if (min_gap(space, sp) <= 0.0) continue;
    const double hd = hausdorff(space, s, sp);
    if (!(hd > 0.0)) continue;
    const double disp =
        space.distance(cheb_center(space, s, tol).center, cheb_center(space, sp, tol).center);
    h = std::max(h, disp / std::sqrt(dm * hd));
  }
  // Include the extremal coupled family on a unit pair.
  if (n >= 3) {
    Point x = space.kind() == SpaceKind::hyperbolic2 ? GeodesicSpace::lift_spatial(-0.5, 0.0)
                                                     : Point(space.dim());
    Point y = space.kind() == SpaceKind::hyperbolic2 ? GeodesicSpace::lift_spatial(0.5, 0.0)
                                                     : Point(space.dim());
    if (space.is_linear()) x[0] = -1.0, y[0] = 1.0;
    const PairGenerator gen = coupled_triple_family(space, x, y);
    for (double eps : dyadic_grid(0.5 * space.distance(x, y), 4, 10)) {
      const NetPair p = gen(eps);
      const double hd = hausdorff(space, p.sigma, p.sigma_prime);
      const double disp = space.distance(cheb_center(space, p.sigma, tol).center,
                                         cheb_center(space, p.sigma_prime, tol).center);
      h = std::max(h, disp / std::sqrt(diam(space, p.sigma) * hd));
    }
  }
  return h;
}

}  // namespace sellab
