#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include "fracwos/errors.hpp"

namespace fracwos {

inline constexpr std::size_t kMaxDim = 8;

/// Fixed-capacity point in R^d, 1 <= d <= kMaxDim. Lives on the stack so the
/// walk loop never allocates.
class Point {
 public:
  Point() = default;

  explicit Point(std::size_t dim) : dim_(checked_dim(dim)) {}

  Point(std::initializer_list<double> coords) : dim_(checked_dim(coords.size())) {
    std::copy(coords.begin(), coords.end(), x_.begin());
  }

  static Point from(std::span<const double> coords) {
    Point p(coords.size());
    std::copy(coords.begin(), coords.end(), p.x_.begin());
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }

  double& operator[](std::size_t i) noexcept { return x_[i]; }
  double operator[](std::size_t i) const noexcept { return x_[i]; }

  std::span<double> coords() noexcept { return {x_.data(), dim_}; }
  std::span<const double> coords() const noexcept { return {x_.data(), dim_}; }

  double* begin() noexcept { return x_.data(); }
  double* end() noexcept { return x_.data() + dim_; }
  const double* begin() const noexcept { return x_.data(); }
  const double* end() const noexcept { return x_.data() + dim_; }

  Point& operator+=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) x_[i] += o.x_[i];
    return *this;
  }
  Point& operator-=(const Point& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) x_[i] -= o.x_[i];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) x_[i] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    return a.dim_ == b.dim_ && std::equal(a.begin(), a.end(), b.begin());
  }

  double norm_sq() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += x_[i] * x_[i];
    return s;
  }
  double norm() const noexcept { return std::sqrt(norm_sq()); }

 private:
  static std::size_t checked_dim(std::size_t d) {
    if (d == 0 || d > kMaxDim) {
      throw DomainError("point dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    }
    return d;
  }

  std::array<double, kMaxDim> x_{};
  std::size_t dim_ = 0;
};

inline double dot(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double distance(const Point& a, const Point& b) noexcept { return (a - b).norm(); }

}  // namespace fracwos
