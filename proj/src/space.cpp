#include "sellab/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sellab {

namespace {

double euclid_norm(const Point& v) {
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) s += (c / scale) * (c / scale);
  return scale * std::sqrt(s);
}

double lp_norm(const Point& v, double p) {
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

// Minkowski tangent vector at x pointing to y, unit speed; zero if x == y.
Point h2_direction(const Point& x, const Point& y) {
  const double c = minkowski(x, y);  // = -cosh d
  Point u = y;
  for (std::size_t i = 0; i < 3; ++i) u[i] += c * x[i];
  const double nn = minkowski(u, u);
  if (!(nn > 0.0)) return Point{0.0, 0.0, 0.0};
  return (1.0 / std::sqrt(nn)) * u;
}

Point h2_exp(const Point& x, const Point& v, double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  return GeodesicSpace::lift_spatial(ch * x[1] + sh * v[1], ch * x[2] + sh * v[2]);
}

}  // namespace

GeodesicSpace GeodesicSpace::euclidean(std::size_t dim) {
  if (dim == 0 || dim > kMaxCoords) throw InputError("euclidean: dim must be in [1, 8]");
  return {SpaceKind::euclidean, dim, 2.0};
}

GeodesicSpace GeodesicSpace::lp(std::size_t dim, double p) {
  if (dim == 0 || dim > kMaxCoords) throw InputError("lp: dim must be in [1, 8]");
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("lp: p must be finite and > 1");
  return {SpaceKind::lp, dim, p};
}

GeodesicSpace GeodesicSpace::l1(std::size_t dim) {
  if (dim == 0 || dim > kMaxCoords) throw InputError("l1: dim must be in [1, 8]");
  return {SpaceKind::l1, dim, 1.0};
}

GeodesicSpace GeodesicSpace::hyperbolic2() { return {SpaceKind::hyperbolic2, 3, 0.0}; }

std::string GeodesicSpace::name() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::euclidean: os << "euclidean(" << dim_ << ")"; break;
    case SpaceKind::lp: os << "lp(" << dim_ << "," << p_ << ")"; break;
    case SpaceKind::l1: os << "l1(" << dim_ << ")"; break;
    case SpaceKind::hyperbolic2: os << "hyperbolic2"; break;
  }
  return os.str();
}

void GeodesicSpace::validate(const Point& x) const {
  if (x.size() != dim_) {
    std::ostringstream os;
    os << "point has " << x.size() << " coordinates, " << name() << " expects " << dim_;
    throw InputError(os.str());
  }
  if (!x.all_finite()) throw InputError("point has non-finite coordinates");
  if (kind_ == SpaceKind::hyperbolic2) {
    if (!(x[0] > 0.0)) throw InputError("hyperboloid point must have x0 > 0");
    const double q = minkowski(x, x);
    if (std::abs(q + 1.0) > 1e-9 * std::max(1.0, x[0] * x[0] * 1e-6))
      throw InputError("point is not on the hyperboloid -x0^2 + x1^2 + x2^2 = -1");
  }
}

void GeodesicSpace::require_geodesics(const char* op) const {
  if (kind_ == SpaceKind::l1)
    throw UnsupportedOperation(std::string(op) + ": l1 geodesics are not unique");
}

double GeodesicSpace::norm(const Point& v) const {
  switch (kind_) {
    case SpaceKind::euclidean: return euclid_norm(v);
    case SpaceKind::lp: return lp_norm(v, p_);
    case SpaceKind::l1: {
      double s = 0.0;
      for (double c : v) s += std::abs(c);
      return s;
    }
    case SpaceKind::hyperbolic2: break;
  }
  return euclid_norm(v);
}

double GeodesicSpace::distance(const Point& a, const Point& b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw InputError("distance: dimension mismatch for " + name());
  if (kind_ != SpaceKind::hyperbolic2) return norm(a - b);
  // Chordal Minkowski length with the time difference recovered from the
  // spatial parts, avoiding the cancellation in arccosh(-<a,b>).
  const double d1 = a[1] - b[1], d2 = a[2] - b[2];
  const double d0 = (d1 * (a[1] + b[1]) + d2 * (a[2] + b[2])) / (a[0] + b[0]);
  const double q = d1 * d1 + d2 * d2 - d0 * d0;
  if (!(q > 0.0)) return 0.0;
  return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

Point GeodesicSpace::geodesic_point(const Point& a, const Point& b, double t) const {
  require_geodesics("geodesic_point");
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("geodesic_point: t must lie in [0, 1]");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return geodesic_extend(a, b, t);
}

Point GeodesicSpace::midpoint(const Point& a, const Point& b) const {
  require_geodesics("midpoint");
  if (a == b) return a;
  if (kind_ != SpaceKind::hyperbolic2) {
    Point m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * a[i] + 0.5 * b[i];
    return m;
  }
  const double n = 2.0 * std::cosh(0.5 * distance(a, b));
  return lift_spatial((a[1] + b[1]) / n, (a[2] + b[2]) / n);
}

Point GeodesicSpace::geodesic_extend(const Point& a, const Point& b, double t) const {
  require_geodesics("geodesic_extend");
  if (kind_ != SpaceKind::hyperbolic2) {
    Point m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = (1.0 - t) * a[i] + t * b[i];
    return m;
  }
  const double d = distance(a, b);
  if (d == 0.0) return a;
  const double sd = std::sinh(d);
  const double wa = std::sinh((1.0 - t) * d) / sd;
  const double wb = std::sinh(t * d) / sd;
  return lift_spatial(wa * a[1] + wb * b[1], wa * a[2] + wb * b[2]);
}

Point GeodesicSpace::to_chart(const Point& x) const {
  if (kind_ != SpaceKind::hyperbolic2) return x;
  return Point{x[1], x[2]};
}

Point GeodesicSpace::from_chart(const Point& u) const {
  if (kind_ != SpaceKind::hyperbolic2) return u;
  return lift_spatial(u[0], u[1]);
}

Point GeodesicSpace::distance_gradient(const Point& x, const Point& s) const {
  Point g(chart_dim());
  switch (kind_) {
    case SpaceKind::euclidean: {
      const Point v = x - s;
      const double d = euclid_norm(v);
      if (d > 0.0)
        for (std::size_t i = 0; i < dim_; ++i) g[i] = v[i] / d;
      return g;
    }
    case SpaceKind::lp: {
      const Point v = x - s;
      const double d = lp_norm(v, p_);
      if (d > 0.0)
        for (std::size_t i = 0; i < dim_; ++i)
          g[i] = std::copysign(std::pow(std::abs(v[i]) / d, p_ - 1.0), v[i]);
      return g;
    }
    case SpaceKind::l1: {
      for (std::size_t i = 0; i < dim_; ++i) {
        const double v = x[i] - s[i];
        g[i] = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
      }
      return g;
    }
    case SpaceKind::hyperbolic2: {
      const double d = distance(x, s);
      if (d == 0.0) return g;
      const double sh = std::sinh(d);
      for (std::size_t i = 0; i < 2; ++i) g[i] = (s[0] * x[i + 1] / x[0] - s[i + 1]) / sh;
      return g;
    }
  }
  return g;
}

Frame GeodesicSpace::frame(const Point& origin) const {
  if (kind_ == SpaceKind::hyperbolic2) {
    // Tangent vectors at origin obtained by Gram-Schmidt of the spatial axes.
    Point basis[2] = {Point{0.0, 1.0, 0.0}, Point{0.0, 0.0, 1.0}};
    Point e[2];
    for (int k = 0; k < 2; ++k) {
      Point w = basis[k];
      const double c = minkowski(origin, w);
      for (std::size_t i = 0; i < 3; ++i) w[i] += c * origin[i];
      for (int j = 0; j < k; ++j) {
        const double cj = minkowski(w, e[j]);
        for (std::size_t i = 0; i < 3; ++i) w[i] -= cj * e[j][i];
      }
      e[k] = (1.0 / std::sqrt(minkowski(w, w))) * w;
    }
    return {origin, e[0], e[1]};
  }
  Point e1(dim_), e2(dim_);
  e1[0] = 1.0;
  if (dim_ > 1) e2[1] = 1.0;
  return {origin, e1, e2};
}

Frame GeodesicSpace::frame(const Point& origin, const Point& toward) const {
  if (kind_ == SpaceKind::hyperbolic2) {
    const Point e1 = h2_direction(origin, toward);
    if (minkowski(e1, e1) == 0.0) return frame(origin);
    Point best;
    double best_n = -1.0;
    for (std::size_t axis = 1; axis < 3; ++axis) {
      Point w{0.0, 0.0, 0.0};
      w[axis] = 1.0;
      const double c0 = minkowski(origin, w);
      for (std::size_t i = 0; i < 3; ++i) w[i] += c0 * origin[i];
      const double c1 = minkowski(w, e1);
      for (std::size_t i = 0; i < 3; ++i) w[i] -= c1 * e1[i];
      const double nn = minkowski(w, w);
      if (nn > best_n) best_n = nn, best = w;
    }
    Point e2 = (1.0 / std::sqrt(best_n)) * best;
    // Same orientation as the spatial axes when viewed from above.
    const double orient = e1[1] * e2[2] - e1[2] * e2[1];
    if (orient < 0.0) e2 = -1.0 * e2;
    return {origin, e1, e2};
  }
  Point v = toward - origin;
  const double n = euclid_norm(v);
  if (n == 0.0) return frame(origin);
  Point e1 = (1.0 / n) * v;
  Point e2(dim_);
  if (dim_ > 1) {
    // Gram-Schmidt against the coordinate axis least aligned with e1.
    std::size_t k = 0;
    for (std::size_t i = 1; i < dim_; ++i)
      if (std::abs(e1[i]) < std::abs(e1[k])) k = i;
    e2[k] = 1.0;
    const double c = e1[k];
    for (std::size_t i = 0; i < dim_; ++i) e2[i] -= c * e1[i];
    e2 = (1.0 / euclid_norm(e2)) * e2;
    // Orient so that (e1, e2) is positively ordered in the first two axes.
    if (dim_ == 2 && e1[0] * e2[1] - e1[1] * e2[0] < 0.0) e2 = -1.0 * e2;
  }
  return {origin, e1, e2};
}

Point GeodesicSpace::sphere_point(const Frame& f, double r, double angle) const {
  const double ca = std::cos(angle), sa = std::sin(angle);
  if (kind_ == SpaceKind::hyperbolic2) {
    Point v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = ca * f.e1[i] + sa * f.e2[i];
    return h2_exp(f.origin, v, r);
  }
  Point u(dim_);
  for (std::size_t i = 0; i < dim_; ++i) u[i] = ca * f.e1[i] + sa * f.e2[i];
  return f.origin + (r / norm(u)) * u;
}

Point GeodesicSpace::disk_to_hyperboloid(const Point& u) {
  if (u.size() != 2) throw InputError("disk point must have 2 coordinates");
  const double n2 = u[0] * u[0] + u[1] * u[1];
  if (!(n2 < 1.0)) throw InputError("disk point must lie in the open unit disk");
  const double s = 1.0 / (1.0 - n2);
  return lift_spatial(2.0 * u[0] * s, 2.0 * u[1] * s);
}

Point GeodesicSpace::hyperboloid_to_disk(const Point& x) {
  const double s = 1.0 / (1.0 + x[0]);
  return Point{x[1] * s, x[2] * s};
}

Point GeodesicSpace::lift_spatial(double x1, double x2) {
  return Point{std::sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2};
}

}  // namespace sellab
