#pragma once

// Domain oracles for walk-on-spheres: membership, a contained ball around an
// interior point, and a nearby exterior point. Domains are immutable after
// construction and every query is safe to call concurrently.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fracwos/point.hpp"

namespace fracwos {

/// Points within this distance of the boundary count as exterior.
inline constexpr double kBoundarySlack = 1e-14;
/// nearest_exterior() lands this far past the boundary.
inline constexpr double kExteriorPush = 1e-12;

struct BallShape {
  Point center;
  double radius;
};

struct BoxShape {
  Point lo;
  Point hi;
};

/// {x : normal . x < offset}, normal stored unit length.
struct HalfSpace {
  Point normal;
  double offset;
};

struct HalfSpaceShape {
  std::vector<HalfSpace> faces;
};

struct UnionOfBallsShape {
  std::vector<Point> centers;
  std::vector<double> radii;
};

class Domain {
 public:
  using Shape = std::variant<BallShape, BoxShape, HalfSpaceShape, UnionOfBallsShape>;

  static Domain ball(const Point& center, double radius);
  static Domain box(const Point& lo, const Point& hi);
  /// Bounded intersection of open half-spaces; normals need not be unit.
  static Domain halfspaces(std::vector<HalfSpace> faces);
  static Domain union_of_balls(std::vector<Point> centers, std::vector<double> radii);
  /// Balls of the given radius centred on the integer grid {-extent..extent}^2.
  static Domain swiss_cheese(double radius = 1.0, int extent = 10);

  std::size_t dim() const noexcept { return dim_; }
  bool convex() const noexcept { return convex_; }
  /// Radius of a ball containing the domain.
  double bounding_radius() const noexcept { return bounding_radius_; }
  const Shape& shape() const noexcept { return shape_; }
  std::string kind() const;

  /// True iff x lies in the open domain at least kBoundarySlack from its boundary.
  bool contains(const Point& x) const;

  /// Radius r > 0 with B(x, r) inside the domain. Exact distance to the
  /// complement for ball, box and half-spaces; for a union of balls, the
  /// largest single-ball clearance max_i (R_i - |x - c_i|).
  double inscribed_radius(const Point& x) const;

  /// A point outside the domain, kExteriorPush past the boundary, within
  /// dist(x, complement) + kExteriorPush of x.
  Point nearest_exterior(const Point& x) const;

 private:
  Domain(Shape shape, std::size_t dim, bool convex, double bounding_radius);

  void build_grid();
  template <class Fn>
  void for_each_candidate_ball(const Point& x, double reach, Fn&& fn) const;
  Point nearest_exterior_union(const UnionOfBallsShape& u, const Point& x) const;

  Shape shape_;
  std::size_t dim_;
  bool convex_;
  double bounding_radius_;

  // Bucket grid over the first two coordinates for UnionOfBalls lookups.
  double cell_ = 0.0;
  double grid_x0_ = 0.0;
  double grid_y0_ = 0.0;
  int grid_nx_ = 0;
  int grid_ny_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace fracwos
