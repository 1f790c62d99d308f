#pragma once

#include <string>

#include "sellab/core.hpp"

namespace sellab {

enum class SpaceKind { euclidean, lp, l1, hyperbolic2 };

/// Orthonormal 2-frame at a point, used to parameterize circles on spheres.
/// For linear kinds e1/e2 are Euclidean-orthonormal coordinate directions;
/// for the hyperbolic plane they are Minkowski-orthonormal tangent vectors.
struct Frame {
  Point origin;
  Point e1;
  Point e2;
};

/// Model space with a distance and (except for l1) unique geodesics.
///
/// The hyperbolic plane uses hyperboloid coordinates (x0, x1, x2) with
/// -x0^2 + x1^2 + x2^2 = -1 and x0 > 0. Its chart is the spatial part (x1, x2).
/// The linear kinds are their own chart.
class GeodesicSpace {
 public:
  static GeodesicSpace euclidean(std::size_t dim);
  static GeodesicSpace lp(std::size_t dim, double p);
  static GeodesicSpace l1(std::size_t dim);
  static GeodesicSpace hyperbolic2();

  SpaceKind kind() const noexcept { return kind_; }
  /// Number of model coordinates (3 for the hyperboloid).
  std::size_t dim() const noexcept { return dim_; }
  /// Intrinsic dimension, i.e. the chart size.
  std::size_t chart_dim() const noexcept {
    return kind_ == SpaceKind::hyperbolic2 ? 2 : dim_;
  }
  double p() const noexcept { return p_; }
  bool uniquely_geodesic() const noexcept { return kind_ != SpaceKind::l1; }
  bool is_linear() const noexcept { return kind_ != SpaceKind::hyperbolic2; }
  std::string name() const;

  /// Throws InputError on wrong size, non-finite entries, or (hyperbolic)
  /// points off the hyperboloid by more than 1e-9.
  void validate(const Point& x) const;
  void require_geodesics(const char* op) const;

  double distance(const Point& a, const Point& b) const;

  /// Point at fraction t of the geodesic from a to b; t in [0, 1].
  Point geodesic_point(const Point& a, const Point& b, double t) const;
  Point midpoint(const Point& a, const Point& b) const;
  /// Same parameterization as geodesic_point but t may exceed 1 (ray
  /// through b) or be negative.
  Point geodesic_extend(const Point& a, const Point& b, double t) const;

  Point to_chart(const Point& x) const;
  Point from_chart(const Point& u) const;
  /// Gradient of d(., s) at x with respect to chart coordinates of x.
  Point distance_gradient(const Point& x, const Point& s) const;

  /// Frame at `origin`; e1 points toward `toward` when given and distinct.
  Frame frame(const Point& origin) const;
  Frame frame(const Point& origin, const Point& toward) const;
  /// Point at distance r from frame.origin in direction angle within the
  /// frame plane (Euclidean angle for linear kinds, tangent angle for H^2).
  Point sphere_point(const Frame& f, double r, double angle) const;

  /// Poincare-disk coordinates (u1, u2) to hyperboloid and back.
  static Point disk_to_hyperboloid(const Point& u);
  static Point hyperboloid_to_disk(const Point& x);
  /// Re-projects a hyperboloid point onto the sheet from its spatial part.
  static Point lift_spatial(double x1, double x2);

 private:
  GeodesicSpace(SpaceKind kind, std::size_t dim, double p)
      : kind_(kind), dim_(dim), p_(p) {}

  double norm(const Point& v) const;

  SpaceKind kind_;
  std::size_t dim_;
  double p_;
};

inline double minkowski(const Point& a, const Point& b) noexcept {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace sellab
