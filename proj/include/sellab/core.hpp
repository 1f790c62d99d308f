#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sellab {

/// Largest coordinate count a Point can hold.
inline constexpr std::size_t kMaxCoords = 8;

/// Largest cardinality accepted by the recursive mean-point routines.
inline constexpr std::size_t kMaxNet = 8;

/// Malformed or out-of-contract input (exit code 2 at the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the requested space kind (e.g. geodesics in l1).
class UnsupportedOperation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach its target; carries the last bracket.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}
  explicit NumericalError(const std::string& what)
      : NumericalError(what, std::nan(""), std::nan("")) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Coordinate vector with inline storage. Trivially copyable so that the
/// mean-point recursion never touches the heap.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t size) : size_(size) {
    if (size > kMaxCoords) throw InputError("point has too many coordinates");
  }
  Point(std::initializer_list<double> values) : Point(values.size()) {
    std::size_t i = 0;
    for (double v : values) c_[i++] = v;
  }
  explicit Point(std::span<const double> values) : Point(values.size()) {
    for (std::size_t i = 0; i < size_; ++i) c_[i] = values[i];
  }

  std::size_t size() const noexcept { return size_; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  const double* begin() const noexcept { return c_.data(); }
  const double* end() const noexcept { return c_.data() + size_; }
  double* begin() noexcept { return c_.data(); }
  double* end() noexcept { return c_.data() + size_; }
  std::span<const double> coords() const noexcept { return {c_.data(), size_}; }
  std::vector<double> to_vector() const { return {begin(), end()}; }

  bool all_finite() const noexcept {
    for (std::size_t i = 0; i < size_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  /// Lexicographic order; used to canonicalize nets.
  friend bool operator<(const Point& a, const Point& b) noexcept {
    for (std::size_t i = 0; i < a.size_ && i < b.size_; ++i) {
      if (a.c_[i] < b.c_[i]) return true;
      if (b.c_[i] < a.c_[i]) return false;
    }
    return a.size_ < b.size_;
  }

 private:
  std::array<double, kMaxCoords> c_{};
  std::size_t size_ = 0;
};

// Affine helpers for the linear kinds.
inline Point operator+(Point a, const Point& b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Point operator-(Point a, const Point& b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Point operator*(double s, Point a) noexcept {
  for (double& v : a) v *= s;
  return a;
}

}  // namespace sellab
