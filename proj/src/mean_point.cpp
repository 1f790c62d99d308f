#include "sellab/mean_point.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace sellab {

namespace {

constexpr int kMaxCopies = 12;

struct Multiset {
  std::array<Point, kMaxNet> p;
  std::array<int, kMaxNet> c{};
  int k = 0;
  int total = 0;
};

struct Context {
  const GeodesicSpace& space;
  int max_rounds;
  std::uint64_t midpoints = 0;
};

double multiset_diam(const GeodesicSpace& s, const Multiset& m) {
  double d = 0.0;
  for (int i = 0; i < m.k; ++i)
    for (int j = i + 1; j < m.k; ++j) d = std::max(d, s.distance(m.p[i], m.p[j]));
  return d;
}

// One copy of entry i removed.
Multiset remove_one(const Multiset& m, int i) {
  Multiset out;
  for (int j = 0; j < m.k; ++j) {
    const int c = m.c[j] - (j == i ? 1 : 0);
    if (c == 0) continue;
    out.p[out.k] = m.p[j];
    out.c[out.k] = c;
    ++out.k;
  }
  out.total = m.total - 1;
  return out;
}

std::string round_cap_message(int rounds, double d, double tol) {
  std::ostringstream os;
  os << "mean point did not reach diameter " << tol << " within " << rounds
     << " rounds (diameter " << d << ")";
  return os.str();
}

Point mp_rec(Context& ctx, const Multiset& m, double tol) {
  if (m.k == 1) return m.p[0];
  if (m.total == 2) {
    ++ctx.midpoints;
    return ctx.space.midpoint(m.p[0], m.p[1]);
  }
  const double sub_tol = tol / (4.0 * m.total);
  Multiset cur = m;
  for (int round = 0; round <= ctx.max_rounds; ++round) {
    const double d = multiset_diam(ctx.space, cur);
    if (d < tol) return cur.p[0];
    if (round == ctx.max_rounds) throw NumericalError(round_cap_message(round, d, tol), 0.0, d);
    Multiset next = cur;
    for (int i = 0; i < cur.k; ++i) next.p[i] = mp_rec(ctx, remove_one(cur, i), sub_tol);
    cur = next;
  }
  return cur.p[0];
}

void check_mp_input(const GeodesicSpace& space, double tol) {
  space.require_geodesics("mean_point");
  if (!(tol > 0.0)) throw InputError("mean_point: tol must be positive");
}

}  // namespace

MpResult mean_point_net(const GeodesicSpace& space, const Net& sigma, double tol,
                        const MpOptions& opts) {
  check_mp_input(space, tol);
  validate_net(space, sigma);
  if (sigma.size() > kMaxNet) throw InputError("mean_point: at most 8 points are supported");
  Net cur = sigma;
  std::sort(cur.begin(), cur.end());
  const std::size_t n = cur.size();

  MpResult res;
  MpTrace& tr = res.trace;
  if (opts.record_rounds) tr.rounds.push_back(cur);
  if (n <= 2) {
    res.point = n == 1 ? cur[0] : space.midpoint(cur[0], cur[1]);
    tr.midpoints = n - 1;
    tr.final = res.point;
    if (opts.record_rounds) tr.rounds.push_back(Net(n, res.point));
    return res;
  }

  const double sub_tol = tol / (4.0 * static_cast<double>(n));
  const double floor = std::max(256.0 * tol, 1e-5 * diam(space, cur));
  std::uint64_t work = 0;
  for (int round = 0;; ++round) {
    const double d = diam(space, cur);
    if (d < tol) break;
    if (round == opts.max_rounds) throw NumericalError(round_cap_message(round, d, tol), 0.0, d);
    Net next(n);
    std::vector<std::uint64_t> counts(n, 0);
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (std::size_t i = 0; i < n; ++i) {
      Multiset sub;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          sub.p[sub.k] = cur[j];
          sub.c[sub.k] = 1;
          ++sub.k;
        }
      sub.total = static_cast<int>(n) - 1;
      Context ctx{space, opts.max_rounds};
      next[i] = mp_rec(ctx, sub, sub_tol);
      counts[i] = ctx.midpoints;
    }
    for (std::uint64_t c : counts) work += c;

    double ratio = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double before = space.distance(cur[i], cur[j]);
        if (before < floor) continue;
        const double r = space.distance(next[i], next[j]) / before;
        if (!(r <= ratio)) ratio = r;
      }
    tr.ratios.push_back(ratio);
    if (ratio > 0.5 + opts.ratio_slack) tr.violation = true;
    cur = std::move(next);
    if (opts.record_rounds) tr.rounds.push_back(cur);
  }
  res.point = cur[0];
  tr.final = res.point;
  tr.midpoints = work;
  return res;
}

Point mean_point(const GeodesicSpace& space, const Net& sigma, double tol) {
  MpOptions o;
  o.record_rounds = false;
  return mean_point_net(space, sigma, tol, o).point;
}

Point mean_point_multiset(const GeodesicSpace& space, const std::vector<Point>& points,
                          const std::vector<int>& counts, double tol,
                          std::uint64_t* midpoints) {
  check_mp_input(space, tol);
  if (points.size() != counts.size()) throw InputError("mean_point: counts length mismatch");
  std::vector<std::pair<Point, int>> entries;
  for (std::size_t i = 0; i < points.size(); ++i) {
    space.validate(points[i]);
    if (counts[i] < 0) throw InputError("mean_point: negative multiplicity");
    if (counts[i] > 0) entries.emplace_back(points[i], counts[i]);
  }
  if (entries.empty()) throw InputError("mean_point: empty multiset");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge exact duplicates so that distinctness of entries is canonical.
  Multiset m;
  for (const auto& [p, c] : entries) {
    if (m.k > 0 && m.p[m.k - 1] == p) {
      m.c[m.k - 1] += c;
    } else {
      if (m.k == static_cast<int>(kMaxNet)) throw InputError("mean_point: too many distinct points");
      m.p[m.k] = p;
      m.c[m.k] = c;
      ++m.k;
    }
    m.total += c;
  }
  if (m.total > kMaxCopies) throw InputError("mean_point: multiset larger than 12 copies");
  Context ctx{space, 200};
  const Point r = mp_rec(ctx, m, tol);
  if (midpoints) *midpoints = ctx.midpoints;
  return r;
}

WeightedMpResult mean_point_weighted(const GeodesicSpace& space, const WeightedNet& sigma,
                                     double tol, int denominator_cap) {
  validate_weighted(space, sigma);
  if (denominator_cap < 1 || denominator_cap > kMaxCopies)
    throw InputError("mean_point_weighted: denominator_cap must lie in [1, 12]");
  const std::size_t n = sigma.points.size();
  for (int q = 1; q <= denominator_cap; ++q) {
    std::vector<int> counts(n);
    double err = 0.0;
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      counts[i] = static_cast<int>(std::lround(sigma.masses[i] * q));
      err = std::max(err, std::abs(sigma.masses[i] - static_cast<double>(counts[i]) / q));
      total += counts[i];
    }
    if (total != q || err > 1e-9) continue;
    WeightedMpResult out;
    out.point = mean_point_multiset(space, sigma.points, counts, tol);
    out.denominator = q;
    out.counts = std::move(counts);
    out.mass_error = err;
    return out;
  }
  std::ostringstream os;
  os << "masses need a common denominator above " << denominator_cap
     << "; round them to a coarser grid";
  throw InputError(os.str());
}

CompactResult mean_point_compact(const GeodesicSpace& space, const NetSampler& region,
                                 const std::vector<double>& eps_schedule, double tol) {
  if (eps_schedule.empty()) throw InputError("mean_point_compact: empty schedule");
  for (std::size_t i = 1; i < eps_schedule.size(); ++i)
    if (!(eps_schedule[i] < eps_schedule[i - 1]))
      throw InputError("mean_point_compact: schedule must be strictly decreasing");
  CompactResult out;
  for (double eps : eps_schedule) {
    const Net net = region(eps);
    out.net_sizes.push_back(net.size());
    out.iterates.push_back(mean_point(space, net, tol));
    if (out.iterates.size() > 1)
      out.displacements.push_back(
          space.distance(out.iterates[out.iterates.size() - 2], out.iterates.back()));
  }
  out.point = out.iterates.back();
  const std::size_t m = out.displacements.size();
  if (m >= 3) {
    for (std::size_t i = m - 2; i < m; ++i)
      if (out.displacements[i] > out.displacements[i - 1] + tol) out.warning = true;
  }
  if (out.warning) {
    std::ostringstream os;
    os << "displacements are not decreasing over the last steps:";
    for (std::size_t i = m >= 3 ? m - 3 : 0; i < m; ++i) os << ' ' << out.displacements[i];
    out.message = os.str();
  }
  return out;
}

double covering_radius(const GeodesicSpace& space, const Net& net, const Net& dense_region) {
  double worst = 0.0;
  for (const Point& p : dense_region) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : net) best = std::min(best, space.distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

Net ring_net(const GeodesicSpace& space, const Frame& f, int k, double rho) {
  Net net{f.origin};
  for (int j = 0; j < k; ++j)
    net.push_back(space.sphere_point(f, rho, 2.0 * std::numbers::pi * j / k));
  return net;
}

Net dense_ball(const GeodesicSpace& space, const Frame& f, double radius) {
  Net pts{f.origin};
  const int rings = 24, per = 96;
  for (int a = 1; a <= rings; ++a)
    for (int b = 0; b < per; ++b)
      pts.push_back(space.sphere_point(f, radius * a / rings, 2.0 * std::numbers::pi * b / per));
  return pts;
}

}  // namespace

NetSampler ball_sampler(const GeodesicSpace& space, const Point& center, double radius) {
  space.validate(center);
  if (!(radius > 0.0)) throw InputError("ball_sampler: radius must be positive");
  return [space, center, radius](double eps) -> Net {
    const Frame f = space.frame(center);
    const Net dense = dense_ball(space, f, radius);
    if (radius <= eps) return Net{center};
    for (int k = 3; k + 1 <= static_cast<int>(kMaxNet); ++k) {
      std::uintmax_t iters = 60;
      const auto best = boost::math::tools::brent_find_minima(
          [&](double rho) { return covering_radius(space, ring_net(space, f, k, rho), dense); },
          0.05 * radius, radius, 20, iters);
      if (best.second <= eps) return ring_net(space, f, k, best.first);
    }
    throw InputError("ball_sampler: eps is below what an 8-point net can cover");
  };
}

NetSampler box_sampler(const GeodesicSpace& space, double lo, double hi) {
  if (!space.is_linear()) throw InputError("box_sampler needs a linear space kind");
  if (!(hi > lo)) throw InputError("box_sampler: hi must exceed lo");
  return [space, lo, hi](double eps) -> Net {
    const std::size_t dim = space.dim();
    for (std::size_t m = 1;; ++m) {
      double count = std::pow(static_cast<double>(m), static_cast<double>(dim));
      if (count > kMaxNet) break;
      const double h = (hi - lo) / m;
      // Farthest box point from the nearest cell center is a cell corner.
      Point half(dim);
      for (std::size_t i = 0; i < dim; ++i) half[i] = 0.5 * h;
      Point zero(dim);
      if (space.distance(zero, half) > eps) continue;
      Net net;
      std::vector<std::size_t> idx(dim, 0);
      for (;;) {
        Point p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = lo + (idx[i] + 0.5) * h;
        net.push_back(p);
        std::size_t a = 0;
        while (a < dim && ++idx[a] == m) idx[a++] = 0;
        if (a == dim) break;
      }
      return net;
    }
    throw InputError("box_sampler: eps is below what an 8-point grid can cover");
  };
}

PerturbationReport perturbation_bound_check(const GeodesicSpace& space, const Net& sigma,
                                            const Net& extra, double tol) {
  PerturbationReport r;
  if (extra.empty()) return r;
  Net all = sigma;
  all.insert(all.end(), extra.begin(), extra.end());
  validate_net(space, all);
  const Point a = mean_point(space, sigma, tol);
  const Point b = mean_point(space, all, tol);
  r.shift = space.distance(a, b);
  for (const Point& x : sigma)
    for (const Point& y : extra) r.max_distance = std::max(r.max_distance, space.distance(x, y));
  const double n = static_cast<double>(sigma.size()), k = static_cast<double>(extra.size());
  r.factor = k / (n + k);
  r.bound = r.max_distance * r.factor;
  r.ratio = r.shift / r.max_distance;
  r.pass = r.shift <= r.bound + 1e-6 + 3.0 * tol;
  return r;
}

MassBoundReport weighted_mass_bound_check(const GeodesicSpace& space, const Net& points,
                                          const std::vector<double>& m1,
                                          const std::vector<double>& m2, double tol,
                                          int denominator_cap) {
  const WeightedMpResult a = mean_point_weighted(space, {points, m1}, tol, denominator_cap);
  const WeightedMpResult b = mean_point_weighted(space, {points, m2}, tol, denominator_cap);
  MassBoundReport r;
  r.shift = space.distance(a.point, b.point);
  double l1 = 0.0;
  for (std::size_t i = 0; i < m1.size(); ++i) l1 += std::abs(m1[i] - m2[i]);
  r.bound = diam(space, points) * l1;
  r.pass = r.shift <= r.bound + 3.0 * tol;
  return r;
}

Point weighted_barycenter(const GeodesicSpace& space, const std::vector<Point>& points,
                          const std::vector<double>& weights, double tol) {
  if (points.empty() || points.size() != weights.size())
    throw InputError("weighted_barycenter: points and weights must match and be nonempty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("weighted_barycenter: weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InputError("weighted_barycenter: weights sum to zero");
  if (space.is_linear()) {
    Point b(space.dim());
    for (std::size_t j = 0; j < points.size(); ++j)
      for (std::size_t i = 0; i < b.size(); ++i) b[i] += weights[j] / total * points[j][i];
    return b;
  }
  // Start from the heaviest point and follow the averaged logarithm.
  std::size_t start = 0;
  for (std::size_t j = 1; j < points.size(); ++j)
    if (weights[j] > weights[start]) start = j;
  Point x = points[start];
  for (int it = 0; it < 500; ++it) {
    Point v{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (weights[j] == 0.0) continue;
      const double d = space.distance(x, points[j]);
      if (d == 0.0) continue;
      // Tangent direction at x toward points[j], scaled to length d.
      Point u = points[j];
      const double c = minkowski(x, points[j]);
      for (std::size_t i = 0; i < 3; ++i) u[i] += c * x[i];
      const double nu = std::sqrt(std::max(minkowski(u, u), 0.0));
      if (!(nu > 0.0)) continue;
      for (std::size_t i = 0; i < 3; ++i) v[i] += weights[j] / total * d * u[i] / nu;
    }
    const double step = std::sqrt(std::max(minkowski(v, v), 0.0));
    if (step < 0.1 * tol) break;
    const double ch = std::cosh(step), sh = std::sinh(step) / step;
    x = GeodesicSpace::lift_spatial(ch * x[1] + sh * v[1], ch * x[2] + sh * v[2]);
  }
  return x;
}

}  // namespace sellab
