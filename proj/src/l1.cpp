#include "sellab/l1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sellab/lp_solver.hpp"
#include "sellab/parallel.hpp"
#include "sellab/random.hpp"

namespace sellab {

namespace {

double l1_dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

Point bbox_mid(const std::vector<Point>& pts) {
  Point lo = pts[0], hi = pts[0];
  for (const Point& p : pts)
    for (std::size_t i = 0; i < p.size(); ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  Point m(lo.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (lo[i] + hi[i]);
  return m;
}

void add_unique(std::vector<Point>& out, const Point& p, double tol) {
  for (const Point& q : out) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) e = std::max(e, std::abs(p[i] - q[i]));
    if (e <= tol) return;
  }
  out.push_back(p);
}

double vertex_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto directed = [](const std::vector<Point>& u, const std::vector<Point>& v) {
    double w = 0.0;
    for (const Point& p : u) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : v) best = std::min(best, l1_dist(p, q));
      w = std::max(w, best);
    }
    return w;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

CenterResult cheb_l1_pair(const Point& x, const Point& y) {
  if (x.size() != y.size() || x.size() == 0) throw InputError("cheb_l1_pair: dimension mismatch");
  if (!x.all_finite() || !y.all_finite()) throw InputError("cheb_l1_pair: non-finite input");
  const std::size_t n = x.size();
  CenterResult res;
  res.support = {0, 1};
  const double total = l1_dist(x, y);
  res.radius = res.radius_lower = 0.5 * total;
  if (total == 0.0) {
    res.center = x;
    res.corner_points = {x};
    res.support = {0};
    return res;
  }
  const double tol = 1e-12 * (1.0 + total);
  std::vector<Point> corners;
  for (std::size_t i = 0; i < n; ++i) {
    // Every other coordinate sits at an end of its range.
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
      Point t(n);
      double used = 0.0;
      std::size_t bit = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const bool far = (mask >> bit++) & 1U;
        t[j] = far ? y[j] : x[j];
        used += std::abs(t[j] - x[j]);
      }
      const double q = 0.5 * total - used;
      const double w = std::abs(y[i] - x[i]);
      if (q < -tol || q > w + tol) continue;
      const double qc = std::clamp(q, 0.0, w);
      t[i] = x[i] + (y[i] >= x[i] ? qc : -qc);
      add_unique(corners, t, tol);
    }
  }
  std::sort(corners.begin(), corners.end());
  res.corner_points = corners;
  res.center = bbox_mid(corners);
  return res;
}

L1CenterSet l1_center_set(const Net& net) {
  if (net.empty()) throw InputError("l1_center_set: empty net");
  const std::size_t d = net[0].size();
  if (d == 0 || d > 4) throw InputError("l1_center_set: dimension must be in [1, 4]");
  const std::size_t signs = std::size_t{1} << d;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (const Point& p : net) {
    if (p.size() != d) throw InputError("l1_center_set: dimension mismatch");
    for (std::size_t s = 0; s < signs; ++s) {
      std::vector<double> row(d + 1);
      double rhs = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = ((s >> j) & 1U) ? -1.0 : 1.0;
        rhs += row[j] * p[j];
      }
      row[d] = -1.0;
      A.push_back(row);
      b.push_back(rhs);
    }
  }
  std::vector<double> c(d + 1, 0.0);
  c[d] = 1.0;
  const LpResult lp = solve_lp(c, A, b);
  if (lp.status != LpStatus::optimal) throw NumericalError("l1_center_set: LP failed");
  L1CenterSet out;
  out.radius = lp.x[d];
  const double r = out.radius + 1e-12 * (1.0 + out.radius);
  for (std::size_t k = 0; k < A.size(); ++k) {
    out.A.emplace_back(A[k].begin(), A[k].begin() + static_cast<std::ptrdiff_t>(d));
    out.b.push_back(b[k] + r);
  }
  out.vertices = enumerate_vertices(out.A, out.b, 1e-9);
  if (out.vertices.empty()) {
    Point t(d);
    for (std::size_t j = 0; j < d; ++j) t[j] = lp.x[j];
    out.vertices = {t};
  }
  out.representative = bbox_mid(out.vertices);
  return out;
}

double l1_set_distance(const L1CenterSet& p, const L1CenterSet& q) {
  const std::size_t d = p.representative.size();
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto add = [&](const L1CenterSet& s, std::size_t off) {
    for (std::size_t k = 0; k < s.A.size(); ++k) {
      std::vector<double> row(3 * d, 0.0);
      for (std::size_t j = 0; j < d; ++j) row[off + j] = s.A[k][j];
      A.push_back(row);
      b.push_back(s.b[k]);
    }
  };
  add(p, 0);
  add(q, d);
  for (std::size_t j = 0; j < d; ++j)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> row(3 * d, 0.0);
      row[j] = sgn;
      row[d + j] = -sgn;
      row[2 * d + j] = -1.0;
      A.push_back(row);
      b.push_back(0.0);
    }
  std::vector<double> c(3 * d, 0.0);
  for (std::size_t j = 0; j < d; ++j) c[2 * d + j] = 1.0;
  const LpResult lp = solve_lp(c, A, b);
  if (lp.status != LpStatus::optimal) throw NumericalError("l1_set_distance: LP failed");
  return std::max(0.0, lp.value);
}

NetPair l1_lower_bound_nets(std::size_t n, double eps, L1Reading reading) {
  if (n < 2 || n > 4)
    throw InputError("l1_lower_bound: the point listing is only resolved for n in {2, 3, 4}");
  if (!(eps >= 0.0)) throw InputError("l1_lower_bound: eps must be nonnegative");
  const double s = eps / static_cast<double>(n);
  NetPair out;
  Point zero(n), one(n);
  for (std::size_t j = 0; j < n; ++j) one[j] = 1.0;
  const double corner_shift = reading == L1Reading::literal ? s : -s;
  Point zs(n), os(n);
  for (std::size_t j = 0; j < n; ++j) zs[j] = corner_shift, os[j] = 1.0 + corner_shift;
  out.sigma = {zero, one};
  out.sigma_prime = {zs, os};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Point a = one, e(n);
    a[i] = 0.0;
    e[i] = 1.0;
    Point shift(n);
    for (std::size_t j = 0; j < n; ++j) shift[j] = j == i ? -s : s;
    out.sigma.push_back(a);
    out.sigma.push_back(e);
    out.sigma_prime.push_back(a + shift);
    out.sigma_prime.push_back(e + shift);
  }
  return out;
}

L1LowerResult l1_lower_bound_experiment(std::size_t n, double eps, L1Reading reading) {
  const NetPair nets = l1_lower_bound_nets(n, eps, reading);
  const GeodesicSpace space = GeodesicSpace::l1(n);
  L1LowerResult r;
  r.first = l1_center_set(nets.sigma);
  r.second = l1_center_set(nets.sigma_prime);
  r.hd = hausdorff(space, nets.sigma, nets.sigma_prime);
  r.displacement = l1_set_distance(r.first, r.second);
  r.representative_displacement = l1_dist(r.first.representative, r.second.representative);
  r.vertex_hausdorff = vertex_hausdorff(r.first.vertices, r.second.vertices);
  r.bound = static_cast<double>(n - 1) * eps;
  r.pass = r.displacement >= r.bound - 1e-9;
  return r;
}

L1UpperResult l1_upper_bound_check(std::size_t n, int trials, double eps, std::uint64_t seed) {
  if (n < 1 || n > 4) throw InputError("l1_upper_bound: n must lie in [1, 4]");
  if (trials < 100) throw InputError("l1_upper_bound: trials must be at least 100");
  if (!(eps > 0.0)) throw InputError("l1_upper_bound: eps must be positive");
  const GeodesicSpace space = GeodesicSpace::l1(n);
  L1UpperResult out;
  out.bound = 4.0 * static_cast<double>(n);
  out.rows.resize(static_cast<std::size_t>(trials));
  std::vector<int> mismatch(static_cast<std::size_t>(trials), 0);
  run_trials(out.rows.size(), Exec::parallel, [&](std::size_t t) {
    Rng rng(trial_seed(seed, t));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = u(rng), y[j] = u(rng);
    const Point xp = random_displacement(space, x, eps * u(rng), rng);
    const Point yp = random_displacement(space, y, eps * u(rng), rng);
    const CenterResult c1 = cheb_l1_pair(x, y);
    const CenterResult c2 = cheb_l1_pair(xp, yp);
    L1UpperRow row;
    row.eps = eps;
    row.hd = hausdorff(space, {x, y}, {xp, yp});
    row.displacement = vertex_hausdorff(c1.corner_points, c2.corner_points);
    row.ratio = row.hd > 0.0 ? row.displacement / row.hd : 0.0;
    out.rows[t] = row;
    const L1CenterSet lp = l1_center_set({x, y});
    if (vertex_hausdorff(lp.vertices, c1.corner_points) > 1e-7) mismatch[t] = 1;
  });
  for (std::size_t t = 0; t < out.rows.size(); ++t) {
    out.max_ratio = std::max(out.max_ratio, out.rows[t].ratio);
    out.lp_mismatches += mismatch[t];
  }
  out.pass = out.max_ratio <= out.bound && out.lp_mismatches == 0;
  return out;
}

}  // namespace sellab
