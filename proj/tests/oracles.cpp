#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace oracle {

namespace {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting; nullopt when singular.
std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-13) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

double edist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Ball circumball(const std::vector<Point>& r) {
  if (r.empty()) return {Point(), -1.0};
  const Point& p0 = r[0];
  const std::size_t k = r.size() - 1;
  if (k == 0) return {p0, 0.0};
  Matrix g(k, std::vector<double>(k));
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    double vv = 0.0;
    for (std::size_t c = 0; c < p0.size(); ++c) vv += (r[i + 1][c] - p0[c]) * (r[i + 1][c] - p0[c]);
    rhs[i] = 0.5 * vv;
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < p0.size(); ++c)
        s += (r[i + 1][c] - p0[c]) * (r[j + 1][c] - p0[c]);
      g[i][j] = s;
    }
  }
  const auto lam = solve(g, rhs);
  if (!lam) return {p0, std::numeric_limits<double>::infinity()};
  Point c = p0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += (*lam)[i] * (r[i + 1][d] - p0[d]);
  return {c, edist(c, p0)};
}

Ball welzl_rec(const Net& p, std::size_t m, std::vector<Point>& r) {
  if (m == 0 || r.size() == p[0].size() + 1) return circumball(r);
  const Point& q = p[m - 1];
  Ball b = welzl_rec(p, m - 1, r);
  if (b.radius >= 0.0 && edist(b.center, q) <= b.radius * (1.0 + 1e-12) + 1e-15) return b;
  r.push_back(q);
  b = welzl_rec(p, m - 1, r);
  r.pop_back();
  return b;
}

Point lift(double u, double v) { return Point{std::sqrt(1.0 + u * u + v * v), u, v}; }

double hdist(const Point& a, const Point& b) {
  const double c = a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
  return std::acosh(std::max(1.0, c));
}

// Minimizes a quasiconvex f over a box by shrinking grids.
std::pair<double, double> grid_min(const std::function<double(double, double)>& f, double cu,
                                   double cv, double w) {
  double best = f(cu, cv);
  for (int level = 0; level < 200 && w > 1e-14; ++level) {
    const int m = 20;
    double bu = cu, bv = cv;
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j) {
        const double u = cu + w * i / m, v = cv + w * j / m;
        const double val = f(u, v);
        if (val < best) best = val, bu = u, bv = v;
      }
    cu = bu;
    cv = bv;
    w *= 0.5;
  }
  return {cu, cv};
}

}  // namespace

Point centroid(const Net& net) {
  Point c(net[0].size());
  for (const Point& p : net)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i] / static_cast<double>(net.size());
  return c;
}

Ball welzl(const Net& net) {
  std::vector<Point> r;
  return welzl_rec(net, net.size(), r);
}

double power_sum(const Net& net, const Point& x, double p) {
  double f = 0.0;
  for (const Point& a : net)
    for (std::size_t k = 0; k < x.size(); ++k) f += std::pow(std::abs(x[k] - a[k]), p);
  return f;
}

Point power_sum_minimizer(const Net& net, double p) {
  Point x = centroid(net);
  double fx = power_sum(net, x, p);
  double step = 1.0;
  for (int it = 0; it < 200000; ++it) {
    Point g(x.size());
    double gn = 0.0;
    for (const Point& a : net)
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - a[k];
        g[k] += p * std::pow(std::abs(d), p - 1.0) * (d < 0 ? -1.0 : 1.0);
      }
    for (std::size_t k = 0; k < x.size(); ++k) gn += g[k] * g[k];
    if (gn < 1e-26) break;
    step = std::min(1.0, step * 2.0);
    bool moved = false;
    while (step > 1e-20) {
      Point y = x;
      for (std::size_t k = 0; k < x.size(); ++k) y[k] -= step * g[k];
      const double fy = power_sum(net, y, p);
      if (fy <= fx - 1e-4 * step * gn) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

Point hyperbolic_barycenter(const Net& net) {
  auto f = [&](double u, double v) {
    const Point x = lift(u, v);
    double s = 0.0;
    for (const Point& a : net) s += std::pow(hdist(x, a), 2);
    return s;
  };
  double u = 0.0, v = 0.0;
  for (const Point& a : net) u += a[1] / net.size(), v += a[2] / net.size();
  double fx = f(u, v), step = 0.1;
  for (int it = 0; it < 100000; ++it) {
    const double h = 1e-6;
    const double gu = (f(u + h, v) - f(u - h, v)) / (2 * h);
    const double gv = (f(u, v + h) - f(u, v - h)) / (2 * h);
    const double gn = gu * gu + gv * gv;
    if (gn < 1e-22) break;
    step = std::min(1.0, step * 2.0);
    bool moved = false;
    while (step > 1e-16) {
      const double fu = f(u - step * gu, v - step * gv);
      if (fu < fx - 1e-4 * step * gn) {
        u -= step * gu;
        v -= step * gv;
        fx = fu;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return lift(u, v);
}

double hyperbolic_hull_distance(const Point& x, const Net& s) {
  std::vector<std::pair<double, double>> k;
  for (const Point& p : s) k.emplace_back(p[1] / p[0], p[2] / p[0]);
  auto at = [&](double a, double b, std::size_t i, std::size_t j) {
    // Clamp to the simplex a, b >= 0, a + b <= 1.
    a = std::max(0.0, a);
    b = std::max(0.0, b);
    if (a + b > 1.0) {
      const double t = a + b;
      a /= t;
      b /= t;
    }
    const double c = 1.0 - a - b;
    const double qu = c * k[0].first + a * k[i].first + b * k[j].first;
    const double qv = c * k[0].second + a * k[i].second + b * k[j].second;
    const double x0 = 1.0 / std::sqrt(1.0 - qu * qu - qv * qv);
    return hdist(x, Point{x0, qu * x0, qv * x0});
  };
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = s.size();
  for (std::size_t i = 0; i < std::max<std::size_t>(m, 1); ++i)
    for (std::size_t j = i; j < std::max<std::size_t>(m, 1); ++j) {
      const std::size_t ii = std::min(i, m - 1), jj = std::min(j, m - 1);
      const int n = 200;
      double ba = 0, bb = 0, bv = std::numeric_limits<double>::infinity();
      for (int p = 0; p <= n; ++p)
        for (int q = 0; p + q <= n; ++q) {
          const double val = at(double(p) / n, double(q) / n, ii, jj);
          if (val < bv) bv = val, ba = double(p) / n, bb = double(q) / n;
        }
      const auto [ra, rb] =
          grid_min([&](double a, double b) { return at(a, b, ii, jj); }, ba, bb, 2.0 / n);
      best = std::min({best, bv, at(ra, rb, ii, jj)});
    }
  return best;
}

Ball hyperbolic_cheb(const Net& net) {
  auto mink = [](const Point& a, const Point& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  auto radius = [&](const Point& x) {
    double m = 0.0;
    for (const Point& a : net) m = std::max(m, hdist(x, a));
    return m;
  };
  // The optimal ball is the smallest covering ball among the pair-midpoint and
  // triple-circumcenter candidates.
  std::vector<Point> cand = {net[0]};
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      Point m(3);
      for (int k = 0; k < 3; ++k) m[k] = net[i][k] + net[j][k];
      const double s = std::sqrt(-mink(m, m));
      for (double& c : m) c /= s;
      cand.push_back(m);
      for (std::size_t l = j + 1; l < net.size(); ++l) {
        Point u(3), w(3);
        for (int k = 0; k < 3; ++k) u[k] = net[i][k] - net[j][k], w[k] = net[i][k] - net[l][k];
        // x with <x, u> = <x, w> = 0 is J (u x w).
        Point n = {-(u[1] * w[2] - u[2] * w[1]), u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
        const double q = mink(n, n);
        if (!(q < 0.0)) continue;
        const double s2 = (n[0] > 0 ? 1.0 : -1.0) * std::sqrt(-q);
        for (double& c : n) c /= s2;
        cand.push_back(n);
      }
    }
  Ball best{net[0], radius(net[0])};
  for (const Point& c : cand) {
    const double r = radius(c);
    if (r < best.radius) best = {c, r};
  }
  return best;
}

std::vector<Point> l1_pair_vertices(const Point& x, const Point& y, double r) {
  const std::size_t d = x.size();
  Matrix rows;
  std::vector<double> rhs;
  for (const Point* c : {&x, &y})
    for (std::size_t s = 0; s < (std::size_t{1} << d); ++s) {
      std::vector<double> row(d);
      double b = r;
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = ((s >> j) & 1U) ? -1.0 : 1.0;
        b += row[j] * (*c)[j];
      }
      rows.push_back(row);
      rhs.push_back(b);
    }
  std::vector<Point> out;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      Matrix a;
      std::vector<double> b;
      for (std::size_t i : pick) a.push_back(rows[i]), b.push_back(rhs[i]);
      const auto sol = solve(a, b);
      if (!sol) return;
      Point t(d);
      for (std::size_t j = 0; j < d; ++j) t[j] = (*sol)[j];
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < d; ++j) v += rows[i][j] * t[j];
        if (v > rhs[i] + 1e-9) return;
      }
      for (const Point& q : out)
        if (edist(q, t) < 1e-8) return;
      out.push_back(t);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

double l1_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto l1 = [](const Point& p, const Point& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s;
  };
  auto directed = [&](const std::vector<Point>& u, const std::vector<Point>& v) {
    double w = 0.0;
    for (const Point& p : u) {
      double m = std::numeric_limits<double>::infinity();
      for (const Point& q : v) m = std::min(m, l1(p, q));
      w = std::max(w, m);
    }
    return w;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace oracle
