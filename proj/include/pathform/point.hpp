#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>

#include "pathform/error.hpp"

namespace pathform {

inline constexpr std::size_t kMaxDimension = 8;

// A point of R^d with inline storage. Jump marks, path values and lattice
// states all use this type; d is fixed at construction.
class Point {
 public:
  Point() = default;

  explicit Point(std::size_t dimension) : dim_(dimension) {
    if (dimension == 0 || dimension > kMaxDimension) {
      fail(Errc::DimensionMismatch,
           "dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
    }
  }

  Point(std::initializer_list<double> coords) : Point(coords.size()) {
    std::copy(coords.begin(), coords.end(), c_.begin());
  }

  explicit Point(std::span<const double> coords) : Point(coords.size()) {
    std::copy(coords.begin(), coords.end(), c_.begin());
  }

  static Point zero(std::size_t dimension) { return Point(dimension); }

  static Point scalar(double x) { return Point{x}; }

  std::size_t dim() const noexcept { return dim_; }

  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }

  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  bool is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.begin() + dim_, [](double v) { return v == 0.0; });
  }

  double norm() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    return std::sqrt(s);
  }

  // Largest absolute coordinate.
  double max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
    return m;
  }

  Point& operator+=(const Point& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }

  Point& operator-=(const Point& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }

  Point& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend Point operator-(Point a) noexcept { return a *= -1.0; }

  // Exact coordinate equality; lattice marks are exactly representable so
  // mark matching never needs a tolerance.
  friend bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i) {
      if (a.c_[i] != b.c_[i]) return false;
    }
    return true;
  }

  // Lexicographic order, used for associative lattice tables.
  friend std::partial_ordering operator<=>(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
    for (std::size_t i = 0; i < a.dim_; ++i) {
      if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
    }
    return std::partial_ordering::equivalent;
  }

  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '(';
    for (std::size_t i = 0; i < p.dim_; ++i) os << (i ? ", " : "") << p.c_[i];
    return os << ')';
  }

 private:
  void require_same_dim(const Point& o) const {
    if (o.dim_ != dim_) fail(Errc::DimensionMismatch, "point dimensions differ");
  }

  std::array<double, kMaxDimension> c_{};
  std::size_t dim_ = 1;
};

// Strict weak ordering for std::map keys (points in a table share d).
struct PointLess {
  bool operator()(const Point& a, const Point& b) const noexcept { return (a <=> b) < 0; }
};

}  // namespace pathform
