#include "sellab/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "sellab/lp_solver.hpp"

namespace sellab {

void validate_net(const GeodesicSpace& space, const Net& net) {
  if (net.empty()) throw InputError("net must contain at least one point");
  for (const Point& p : net) space.validate(p);
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (!(space.distance(net[i], net[j]) > 0.0)) {
        std::ostringstream os;
        os << "net points " << i << " and " << j << " coincide";
        throw InputError(os.str());
      }
}

void validate_weighted(const GeodesicSpace& space, const WeightedNet& net) {
  if (net.points.empty()) throw InputError("weighted net must contain at least one point");
  if (net.points.size() != net.masses.size())
    throw InputError("weighted net: masses and points differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    space.validate(net.points[i]);
    if (!(net.masses[i] >= 0.0) || !std::isfinite(net.masses[i]))
      throw InputError("weighted net: masses must be finite and nonnegative");
    total += net.masses[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("weighted net: masses must sum to 1");
}

double diam(const GeodesicSpace& space, const Net& net) {
  double d = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      d = std::max(d, space.distance(net[i], net[j]));
  return d;
}

double min_gap(const GeodesicSpace& space, const Net& net) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      g = std::min(g, space.distance(net[i], net[j]));
  return g;
}

namespace {

double directed(const GeodesicSpace& space, const Net& a, const Net& b) {
  double worst = 0.0;
  for (const Point& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : b) best = std::min(best, space.distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const GeodesicSpace& space, const Net& a, const Net& b) {
  if (a.empty() || b.empty()) throw InputError("hausdorff: sets must be nonempty");
  return std::max(directed(space, a, b), directed(space, b, a));
}

Net without(const Net& net, std::size_t skip) {
  Net out;
  out.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    if (i != skip) out.push_back(net[i]);
  return out;
}

namespace {

// State of one position on the coefficient simplex.
struct Eval {
  double upper = 0.0;       // distance attained at the current combination
  double lower = 0.0;       // certified lower bound on the hull distance
  std::vector<double> grad; // descent-direction gradient in lambda
  Point nearest;
};

// Frank-Wolfe state for lp hulls in dimension three and up.
class HullProblem {
 public:
  HullProblem(const GeodesicSpace& space, const Point& x, const Net& s)
      : space_(space), x_(x), s_(s) {}

  Point combine(const std::vector<double>& lam) const {
    const std::size_t dim = x_.size();
    Point v(dim);
    for (std::size_t j = 0; j < s_.size(); ++j)
      if (lam[j] != 0.0)
        for (std::size_t i = 0; i < dim; ++i) v[i] += lam[j] * s_[j][i];
    return v;
  }

  Eval evaluate(const std::vector<double>& lam) const {
    Eval e;
    e.nearest = combine(lam);
    e.upper = space_.distance(x_, e.nearest);
    e.grad.assign(s_.size(), 0.0);
    if (e.upper == 0.0) return e;
    const Point g = space_.distance_gradient(x_, e.nearest);
    for (std::size_t j = 0; j < s_.size(); ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < x_.size(); ++i) dot += g[i] * s_[j][i];
      e.grad[j] = -dot;
    }
    double avg = 0.0, lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s_.size(); ++j) {
      avg += lam[j] * e.grad[j];
      lo = std::min(lo, e.grad[j]);
    }
    e.lower = std::max(0.0, e.upper - (avg - lo));
    return e;
  }

  /// The distance is convex along the ray, so bisect on its derivative.
  double line_search(const std::vector<double>& lam, const std::vector<double>& dir,
                     double gmax) const {
    const Point p = combine(lam);
    Point dv(x_.size());
    for (std::size_t j = 0; j < s_.size(); ++j)
      if (dir[j] != 0.0)
        for (std::size_t i = 0; i < x_.size(); ++i) dv[i] += dir[j] * s_[j][i];
    auto slope = [&](double g) {
      const Point q = p + g * dv;
      if (space_.distance(q, x_) == 0.0) return 0.0;
      const Point grad = space_.distance_gradient(q, x_);
      double sl = 0.0;
      for (std::size_t i = 0; i < x_.size(); ++i) sl += grad[i] * dv[i];
      return sl;
    };
    if (slope(0.0) >= 0.0) return 0.0;
    if (slope(gmax) <= 0.0) return gmax;
    double lo = 0.0, hi = gmax;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (slope(mid) < 0.0 ? lo : hi) = mid;
    }
    return lo;
  }

 private:
  const GeodesicSpace& space_;
  const Point& x_;
  const Net& s_;
};

// Whether x lies in co(S), up to `slack` per chart coordinate. The hull of
// hyperboloid points is the Euclidean hull of their Klein coordinates.
bool hull_contains(const GeodesicSpace& space, const Point& x, const Net& s, double slack,
                   std::vector<double>& weights) {
  const bool hyp = space.kind() == SpaceKind::hyperbolic2;
  auto chart = [&](const Point& p) { return hyp ? Point{p[1] / p[0], p[2] / p[0]} : p; };
  const Point y = chart(x);
  const std::size_t m = s.size(), d = y.size();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(m, 0.0);
    row[j] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
  }
  a.emplace_back(m, 1.0);
  b.push_back(1.0);
  a.emplace_back(m, -1.0);
  b.push_back(-1.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = chart(s[j])[i];
    a.push_back(row);
    b.push_back(y[i] + slack);
    for (double& v : row) v = -v;
    a.push_back(row);
    b.push_back(-y[i] + slack);
  }
  const LpResult r = solve_lp(std::vector<double>(m, 0.0), a, b);
  if (r.status != LpStatus::optimal) return false;
  weights = r.x;
  return true;
}

// Euclidean projection onto co(S): the nearest point lies in the relative
// interior of the hull of some affinely independent subset, so the minimum
// over subsets whose affine projection has nonnegative coefficients is exact.
HullDistance euclidean_hull(const Point& x, const Net& s) {
  const std::size_t m = s.size(), dim = x.size();
  HullDistance best;
  best.distance = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (1U << j)) idx.push_back(j);
    if (idx.size() > dim + 1) continue;
    const std::size_t k = idx.size() - 1;
    Eigen::MatrixXd a(dim, k);
    Eigen::VectorXd r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      r(i) = x[i] - s[idx[0]][i];
      for (std::size_t c = 0; c < k; ++c) a(i, c) = s[idx[c + 1]][i] - s[idx[0]][i];
    }
    std::vector<double> mu(idx.size(), 0.0);
    mu[0] = 1.0;
    if (k > 0) {
      const Eigen::MatrixXd gram = a.transpose() * a;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
      if (lu.rank() < static_cast<Eigen::Index>(k)) continue;
      const Eigen::VectorXd c = lu.solve(a.transpose() * r);
      double rest = 1.0;
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (c(i) < 0.0) ok = false;
        mu[i + 1] = c(i);
        rest -= c(i);
      }
      if (!ok || rest < 0.0) continue;
      mu[0] = rest;
    }
    Point q(dim);
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (std::size_t i = 0; i < dim; ++i) q[i] += mu[c] * s[idx[c]][i];
    double d2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) d2 += (x[i] - q[i]) * (x[i] - q[i]);
    const double d = std::sqrt(d2);
    if (d < best.distance) {
      best.distance = best.lower = d;
      best.nearest = q;
      best.weights.assign(m, 0.0);
      for (std::size_t c = 0; c < idx.size(); ++c) best.weights[idx[c]] = mu[c];
    }
  }
  return best;
}

// Nearest point to x on the segment [a, b]; returns the fraction t.
double segment_fraction(const GeodesicSpace& space, const Point& x, const Point& a,
                        const Point& b) {
  if (space.kind() == SpaceKind::hyperbolic2) {
    // Normal of the geodesic line through a and b under the Minkowski form.
    Point n{-(a[1] * b[2] - a[2] * b[1]), a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    const double nn = minkowski(n, n);
    if (!(nn > 0.0)) return 0.0;
    n = (1.0 / std::sqrt(nn)) * n;
    const double sx = minkowski(x, n);
    const Point f = x - sx * n;
    // Foot point f = alpha a + beta b.
    const double c = minkowski(a, b), fa = minkowski(f, a), fb = minkowski(f, b);
    const double det = 1.0 - c * c;
    const double alpha = (-fa - c * fb) / det;
    const double beta = (-c * fa - fb) / det;
    if (alpha <= 0.0) return 1.0;
    if (beta <= 0.0) return 0.0;
    const double dab = space.distance(a, b);
    // Along the geodesic, beta / alpha = sinh(t D) / sinh((1 - t) D).
    const double ratio = beta / alpha;
    return std::atanh(ratio * std::sinh(dab) / (1.0 + ratio * std::cosh(dab))) / dab;
  }
  // The distance is convex along the segment; bisect on its derivative.
  const Point v = b - a;
  auto slope = [&](double t) {
    const Point p = a + t * v;
    if (space.distance(p, x) == 0.0) return 0.0;
    const Point g = space.distance_gradient(p, x);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += g[i] * v[i];
    return s;
  };
  if (slope(0.0) >= 0.0) return 0.0;
  if (slope(1.0) <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double sl = slope(mid);
    if (sl == 0.0) return mid;
    (sl < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Planar hulls: zero inside, otherwise the nearest boundary segment. Every
// boundary edge is a segment between two points of S.
HullDistance planar_hull(const GeodesicSpace& space, const Point& x, const Net& s, double tol) {
  const std::size_t m = s.size();
  HullDistance out;
  out.weights.assign(m, 0.0);
  const double scale = space.kind() == SpaceKind::hyperbolic2 ? x[0] * x[0] : 1.0;
  std::vector<double> inside;
  if (hull_contains(space, x, s, 1e-3 * tol / scale, inside)) {
    out.nearest = x;
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) total += out.weights[j] = std::max(0.0, inside[j]);
    for (double& w : out.weights) w /= total;
    return out;
  }
  out.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double t = segment_fraction(space, x, s[i], s[j]);
      const Point q = space.geodesic_point(s[i], s[j], t);
      const double d = space.distance(x, q);
      if (d < out.distance) {
        out.distance = out.lower = d;
        out.nearest = q;
        out.weights.assign(m, 0.0);
        out.weights[i] = 1.0 - t;
        out.weights[j] = t;
      }
    }
  return out;
}

}  // namespace

HullDistance dist_to_hull_bracket(const GeodesicSpace& space, const Point& x, const Net& S,
                                  double tol, int max_iter) {
  if (S.empty()) throw InputError("dist_to_hull: hull of an empty set");
  if (!(tol > 0.0)) throw InputError("dist_to_hull: tol must be positive");
  space.require_geodesics("dist_to_hull");
  const std::size_t m = S.size();

  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    const double d = space.distance(x, S[j]);
    if (d < best) best = d, start = j;
  }
  HullDistance out;
  out.weights.assign(m, 0.0);
  out.weights[start] = 1.0;
  if (best == 0.0 || m == 1) {
    out.distance = out.lower = best;
    out.nearest = S[start];
    return out;
  }

  if (space.kind() == SpaceKind::euclidean) return euclidean_hull(x, S);
  if (space.chart_dim() <= 2) return planar_hull(space, x, S, tol);
  std::vector<double> inside;
  if (hull_contains(space, x, S, 1e-3 * tol, inside)) {
    out.distance = out.lower = 0.0;
    out.nearest = x;
    return out;
  }

  HullProblem prob(space, x, S);
  std::vector<double>& lam = out.weights;
  std::vector<double> dir(m);
  Eval e;
  for (int it = 0; it < max_iter; ++it) {
    e = prob.evaluate(lam);
    out.iterations = it;
    if (e.upper - e.lower <= tol || e.upper <= tol) {
      out.distance = e.upper;
      out.lower = std::min(e.lower, e.upper);
      out.nearest = e.nearest;
      return out;
    }
    double avg = 0.0;
    std::size_t fw = 0, away = m;
    for (std::size_t j = 0; j < m; ++j) {
      avg += lam[j] * e.grad[j];
      if (e.grad[j] < e.grad[fw]) fw = j;
      if (lam[j] > 0.0 && (away == m || e.grad[j] > e.grad[away])) away = j;
    }
    const double fw_gap = avg - e.grad[fw];
    const double away_gap = e.grad[away] - avg;
    double gmax;
    bool away_step = false;
    if (fw_gap >= away_gap || lam[away] >= 1.0) {
      for (std::size_t j = 0; j < m; ++j) dir[j] = -lam[j];
      dir[fw] += 1.0;
      gmax = 1.0;
    } else {
      for (std::size_t j = 0; j < m; ++j) dir[j] = lam[j];
      dir[away] -= 1.0;
      gmax = lam[away] / (1.0 - lam[away]);
      away_step = true;
    }
    double g = prob.line_search(lam, dir, gmax);
    if (g <= 0.0 && !away_step && away < m && lam[away] < 1.0) {
      for (std::size_t j = 0; j < m; ++j) dir[j] = lam[j];
      dir[away] -= 1.0;
      gmax = lam[away] / (1.0 - lam[away]);
      away_step = true;
      g = prob.line_search(lam, dir, gmax);
    } else if (g <= 0.0 && away_step) {
      for (std::size_t j = 0; j < m; ++j) dir[j] = -lam[j];
      dir[fw] += 1.0;
      gmax = 1.0;
      away_step = false;
      g = prob.line_search(lam, dir, gmax);
    }
    if (g <= 0.0) break;
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      lam[j] = std::max(0.0, lam[j] + g * dir[j]);
      total += lam[j];
    }
    if (away_step && g >= gmax) lam[away] = 0.0;
    for (double& l : lam) l /= total;
  }
  std::ostringstream os;
  os.precision(17);
  os << "dist_to_hull did not converge; bracket [" << e.lower << ", " << e.upper << "]";
  throw NumericalError(os.str(), e.lower, e.upper);
}

double dist_to_hull(const GeodesicSpace& space, const Point& x, const Net& S, double tol) {
  return dist_to_hull_bracket(space, x, S, tol).distance;
}

}  // namespace sellab
