#include "fracwos/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fracwos/errors.hpp"

namespace fracwos {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Point unit_axis(std::size_t dim, std::size_t k) {
  Point e(dim);
  e[k] = 1.0;
  return e;
}

Eigen::VectorXd to_eigen(const Point& p) {
  Eigen::VectorXd v(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) v[static_cast<Eigen::Index>(i)] = p[i];
  return v;
}

Point from_eigen(const Eigen::VectorXd& v) {
  Point p(static_cast<std::size_t>(v.size()));
  for (std::size_t i = 0; i < p.dim(); ++i) p[i] = v[static_cast<Eigen::Index>(i)];
  return p;
}

// Calls fn(subset) for every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// A polyhedron {n_i . x <= b_i} is bounded iff no nonzero direction v has
// n_i . v <= 0 for all i. Any such cone has an extreme ray orthogonal to d-1
// of the normals, so it suffices to test those candidate directions.
bool is_bounded(const std::vector<HalfSpace>& faces, std::size_t dim) {
  const std::size_t m = faces.size();
  if (m < dim + 1) return false;
  bool bounded = true;
  for_each_subset(m, dim - 1, [&](const std::vector<std::size_t>& subset) {
    if (!bounded) return;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(dim - 1), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < subset.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = to_eigen(faces[subset[r]].normal);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1) return;  // degenerate subset; covered by others
    for (double sign : {1.0, -1.0}) {
      const Eigen::VectorXd v = sign * kernel.col(0).normalized();
      bool recedes = true;
      for (const auto& f : faces) {
        if (to_eigen(f.normal).dot(v) > 1e-12) {
          recedes = false;
          break;
        }
      }
      if (recedes) bounded = false;
    }
  });
  return bounded;
}

std::vector<Point> polytope_vertices(const std::vector<HalfSpace>& faces, std::size_t dim) {
  std::vector<Point> vertices;
  for_each_subset(faces.size(), dim, [&](const std::vector<std::size_t>& subset) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::VectorXd b(static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      a.row(static_cast<Eigen::Index>(r)) = to_eigen(faces[subset[r]].normal);
      b[static_cast<Eigen::Index>(r)] = faces[subset[r]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) return;
    const Point v = from_eigen(lu.solve(b));
    for (const auto& f : faces) {
      if (dot(f.normal, v) > f.offset + 1e-9 * (1.0 + std::fabs(f.offset))) return;
    }
    vertices.push_back(v);
  });
  return vertices;
}

}  // namespace

Domain::Domain(Shape shape, std::size_t dim, bool convex, double bounding_radius)
    : shape_(std::move(shape)), dim_(dim), convex_(convex), bounding_radius_(bounding_radius) {}

Domain Domain::ball(const Point& center, double radius) {
  if (center.dim() < 2) throw DomainError("ball: dimension must be >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
  return Domain(BallShape{center, radius}, center.dim(), true, radius);
}

Domain Domain::box(const Point& lo, const Point& hi) {
  if (lo.dim() != hi.dim()) throw DomainError("box: corner dimensions differ");
  if (lo.dim() < 2) throw DomainError("box: dimension must be >= 2");
  for (std::size_t k = 0; k < lo.dim(); ++k) {
    if (!(hi[k] > lo[k])) throw DomainError("box: max corner must exceed min corner in every coordinate");
  }
  const double half_diag = 0.5 * distance(lo, hi);
  return Domain(BoxShape{lo, hi}, lo.dim(), true, half_diag);
}

Domain Domain::halfspaces(std::vector<HalfSpace> faces) {
  if (faces.empty()) throw DomainError("halfspaces: at least one face required");
  const std::size_t dim = faces.front().normal.dim();
  if (dim < 2) throw DomainError("halfspaces: dimension must be >= 2");
  for (auto& f : faces) {
    if (f.normal.dim() != dim) throw DomainError("halfspaces: normals must share one dimension");
    const double n = f.normal.norm();
    if (!(n > 0.0)) throw DomainError("halfspaces: zero normal");
    f.normal *= 1.0 / n;
    f.offset /= n;
  }
  if (!is_bounded(faces, dim)) throw DomainError("halfspaces: intersection is unbounded");
  const std::vector<Point> vertices = polytope_vertices(faces, dim);
  if (vertices.empty()) throw DomainError("halfspaces: intersection is empty");
  Point centroid(dim);
  for (const auto& v : vertices) centroid += v;
  centroid *= 1.0 / static_cast<double>(vertices.size());
  double radius = 0.0;
  for (const auto& v : vertices) radius = std::max(radius, distance(v, centroid));
  Domain d(HalfSpaceShape{std::move(faces)}, dim, true, radius);
  if (!d.contains(centroid)) throw DomainError("halfspaces: intersection has empty interior");
  return d;
}

Domain Domain::union_of_balls(std::vector<Point> centers, std::vector<double> radii) {
  if (centers.empty()) throw DomainError("union_of_balls: at least one ball required");
  if (radii.size() == 1 && centers.size() > 1) radii.assign(centers.size(), radii.front());
  if (radii.size() != centers.size()) throw DomainError("union_of_balls: one radius per centre required");
  const std::size_t dim = centers.front().dim();
  if (dim < 2) throw DomainError("union_of_balls: dimension must be >= 2");
  Point centroid(dim);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i].dim() != dim) throw DomainError("union_of_balls: centres must share one dimension");
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw DomainError("union_of_balls: radii must be positive");
    centroid += centers[i];
  }
  centroid *= 1.0 / static_cast<double>(centers.size());
  double radius = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) radius = std::max(radius, distance(centers[i], centroid) + radii[i]);
  Domain d(UnionOfBallsShape{std::move(centers), std::move(radii)}, dim, false, radius);
  d.build_grid();
  return d;
}

Domain Domain::swiss_cheese(double radius, int extent) {
  if (extent < 0) throw DomainError("swiss_cheese: extent must be nonnegative");
  std::vector<Point> centers;
  for (int i = -extent; i <= extent; ++i) {
    for (int j = -extent; j <= extent; ++j) centers.push_back(Point{static_cast<double>(i), static_cast<double>(j)});
  }
  return union_of_balls(std::move(centers), {radius});
}

std::string Domain::kind() const {
  return std::visit(Overloaded{[](const BallShape&) { return std::string("ball"); },
                               [](const BoxShape&) { return std::string("box"); },
                               [](const HalfSpaceShape&) { return std::string("halfspaces"); },
                               [](const UnionOfBallsShape&) { return std::string("union_of_balls"); }},
                    shape_);
}

void Domain::build_grid() {
  const auto& u = std::get<UnionOfBallsShape>(shape_);
  cell_ = *std::max_element(u.radii.begin(), u.radii.end());
  double xmin = std::numeric_limits<double>::max(), ymin = xmin;
  double xmax = std::numeric_limits<double>::lowest(), ymax = xmax;
  for (const auto& c : u.centers) {
    xmin = std::min(xmin, c[0]);
    xmax = std::max(xmax, c[0]);
    ymin = std::min(ymin, c[1]);
    ymax = std::max(ymax, c[1]);
  }
  const double nx = std::floor((xmax - xmin) / cell_) + 1.0;
  const double ny = std::floor((ymax - ymin) / cell_) + 1.0;
  if (nx * ny > 4.0e6) return;  // fall back to a linear scan
  grid_x0_ = xmin;
  grid_y0_ = ymin;
  grid_nx_ = static_cast<int>(nx);
  grid_ny_ = static_cast<int>(ny);
  buckets_.assign(static_cast<std::size_t>(grid_nx_) * static_cast<std::size_t>(grid_ny_), {});
  for (std::size_t i = 0; i < u.centers.size(); ++i) {
    const int cx = std::min(grid_nx_ - 1, static_cast<int>((u.centers[i][0] - grid_x0_) / cell_));
    const int cy = std::min(grid_ny_ - 1, static_cast<int>((u.centers[i][1] - grid_y0_) / cell_));
    buckets_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(grid_nx_) + static_cast<std::size_t>(cx)].push_back(i);
  }
}

// Visits every ball whose centre projects within cell_ + reach of x in the
// first two coordinates (a superset of balls within reach of x).
template <class Fn>
void Domain::for_each_candidate_ball(const Point& x, double reach, Fn&& fn) const {
  const auto& u = std::get<UnionOfBallsShape>(shape_);
  if (buckets_.empty()) {
    for (std::size_t i = 0; i < u.centers.size(); ++i) fn(i);
    return;
  }
  const double span = cell_ + reach;
  const double fx0 = std::floor((x[0] - span - grid_x0_) / cell_);
  const double fx1 = std::floor((x[0] + span - grid_x0_) / cell_);
  const double fy0 = std::floor((x[1] - span - grid_y0_) / cell_);
  const double fy1 = std::floor((x[1] + span - grid_y0_) / cell_);
  // Far-away or non-finite queries miss the grid; this also keeps the casts
  // below in range.
  if (!(fx1 >= 0.0 && fy1 >= 0.0 && fx0 <= grid_nx_ - 1.0 && fy0 <= grid_ny_ - 1.0)) return;
  const int x0 = static_cast<int>(std::max(0.0, fx0));
  const int x1 = static_cast<int>(std::min(static_cast<double>(grid_nx_ - 1), fx1));
  const int y0 = static_cast<int>(std::max(0.0, fy0));
  const int y1 = static_cast<int>(std::min(static_cast<double>(grid_ny_ - 1), fy1));
  for (int cy = y0; cy <= y1; ++cy) {
    for (int cx = x0; cx <= x1; ++cx) {
      for (std::size_t i : buckets_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(grid_nx_) + static_cast<std::size_t>(cx)]) fn(i);
    }
  }
}

bool Domain::contains(const Point& x) const {
  if (x.dim() != dim_) throw DomainError("contains: point dimension does not match domain");
  return std::visit(
      Overloaded{
          [&](const BallShape& b) { return distance(x, b.center) < b.radius - kBoundarySlack; },
          [&](const BoxShape& b) {
            for (std::size_t k = 0; k < dim_; ++k) {
              if (!(x[k] > b.lo[k] + kBoundarySlack && x[k] < b.hi[k] - kBoundarySlack)) return false;
            }
            return true;
          },
          [&](const HalfSpaceShape& h) {
            for (const auto& f : h.faces) {
              if (!(dot(f.normal, x) < f.offset - kBoundarySlack)) return false;
            }
            return true;
          },
          [&](const UnionOfBallsShape& u) {
            bool inside = false;
            for_each_candidate_ball(x, 0.0, [&](std::size_t i) {
              if (!inside && distance(x, u.centers[i]) < u.radii[i] - kBoundarySlack) inside = true;
            });
            return inside;
          }},
      shape_);
}

double Domain::inscribed_radius(const Point& x) const {
  if (x.dim() != dim_) throw DomainError("inscribed_radius: point dimension does not match domain");
  const double r = std::visit(
      Overloaded{[&](const BallShape& b) { return b.radius - distance(x, b.center); },
                 [&](const BoxShape& b) {
                   double r = std::numeric_limits<double>::max();
                   for (std::size_t k = 0; k < dim_; ++k) r = std::min({r, x[k] - b.lo[k], b.hi[k] - x[k]});
                   return r;
                 },
                 [&](const HalfSpaceShape& h) {
                   double r = std::numeric_limits<double>::max();
                   for (const auto& f : h.faces) r = std::min(r, f.offset - dot(f.normal, x));
                   return r;
                 },
                 [&](const UnionOfBallsShape& u) {
                   double r = std::numeric_limits<double>::lowest();
                   for_each_candidate_ball(x, 0.0, [&](std::size_t i) { r = std::max(r, u.radii[i] - distance(x, u.centers[i])); });
                   return r;
                 }},
      shape_);
  if (!(r > kBoundarySlack)) throw DomainError("inscribed_radius: point is not inside the domain");
  return r;
}

Point Domain::nearest_exterior(const Point& x) const {
  if (!contains(x)) throw DomainError("nearest_exterior: point is not inside the domain");
  return std::visit(
      Overloaded{
          [&](const BallShape& b) {
            Point dir = x - b.center;
            const double n = dir.norm();
            dir = n > 0.0 ? dir * (1.0 / n) : unit_axis(dim_, 0);
            return b.center + dir * (b.radius + kExteriorPush);
          },
          [&](const BoxShape& b) {
            std::size_t axis = 0;
            bool low = true;
            double best = std::numeric_limits<double>::max();
            for (std::size_t k = 0; k < dim_; ++k) {
              if (x[k] - b.lo[k] < best) {
                best = x[k] - b.lo[k];
                axis = k;
                low = true;
              }
              if (b.hi[k] - x[k] < best) {
                best = b.hi[k] - x[k];
                axis = k;
                low = false;
              }
            }
            Point y = x;
            y[axis] = low ? b.lo[axis] - kExteriorPush : b.hi[axis] + kExteriorPush;
            return y;
          },
          [&](const HalfSpaceShape& h) {
            const HalfSpace* nearest = &h.faces.front();
            double best = std::numeric_limits<double>::max();
            for (const auto& f : h.faces) {
              const double gap = f.offset - dot(f.normal, x);
              if (gap < best) {
                best = gap;
                nearest = &f;
              }
            }
            return x + nearest->normal * (best + kExteriorPush);
          },
          [&](const UnionOfBallsShape& u) { return nearest_exterior_union(u, x); }},
      shape_);
}

// Nearest point of the complement of a union of balls. The ray from the
// deepest ball's centre through x gives an upper bound in any dimension. In
// the plane the exact answer is either the radial projection of x onto an
// uncovered part of some circle or an uncovered intersection point of two
// circles, and only circles within the current bound can contribute.
Point Domain::nearest_exterior_union(const UnionOfBallsShape& u, const Point& x) const {
  std::size_t deepest = 0;
  double clearance = std::numeric_limits<double>::lowest();
  for_each_candidate_ball(x, 0.0, [&](std::size_t i) {
    const double c = u.radii[i] - distance(x, u.centers[i]);
    if (c > clearance) {
      clearance = c;
      deepest = i;
    }
  });
  Point ray = x - u.centers[deepest];
  const double ray_norm = ray.norm();
  ray = ray_norm > 0.0 ? ray * (1.0 / ray_norm) : unit_axis(dim_, 0);

  double t_exit = 0.0;
  for (bool advanced = true; advanced;) {
    advanced = false;
    for (std::size_t j = 0; j < u.centers.size(); ++j) {
      const Point v = x - u.centers[j];
      const double b = dot(ray, v);
      const double disc = b * b - (v.norm_sq() - u.radii[j] * u.radii[j]);
      if (disc <= 0.0) continue;
      const double s = std::sqrt(disc);
      const double t_in = -b - s;
      const double t_out = -b + s;
      if (t_in <= t_exit && t_out > t_exit) {
        t_exit = t_out;
        advanced = true;
      }
    }
  }

  Point best = x + ray * t_exit;
  Point outward = ray;
  double best_dist = t_exit;

  if (dim_ == 2) {
    std::vector<std::size_t> near;
    for_each_candidate_ball(x, best_dist, [&](std::size_t i) {
      if (distance(x, u.centers[i]) - u.radii[i] < best_dist) near.push_back(i);
    });
    auto covered = [&](const Point& p, std::size_t i, std::size_t j) {
      for (std::size_t k : near) {
        if (k == i || k == j) continue;
        if (distance(p, u.centers[k]) < u.radii[k]) return true;
      }
      return false;
    };
    auto consider = [&](const Point& p, std::size_t i, std::size_t j, const Point& normal) {
      const double d = distance(p, x);
      if (d < best_dist && !covered(p, i, j)) {
        best_dist = d;
        best = p;
        outward = normal;
      }
    };
    const std::size_t none = u.centers.size();
    for (std::size_t i : near) {
      Point v = x - u.centers[i];
      const double n = v.norm();
      v = n > 0.0 ? v * (1.0 / n) : unit_axis(2, 0);
      consider(u.centers[i] + v * u.radii[i], i, none, v);
    }
    for (std::size_t a = 0; a < near.size(); ++a) {
      for (std::size_t b = a + 1; b < near.size(); ++b) {
        const std::size_t i = near[a], j = near[b];
        const Point delta = u.centers[j] - u.centers[i];
        const double dd = delta.norm();
        const double ri = u.radii[i], rj = u.radii[j];
        if (dd == 0.0 || dd >= ri + rj || dd <= std::fabs(ri - rj)) continue;
        const double along = (ri * ri - rj * rj + dd * dd) / (2.0 * dd);
        const double h = std::sqrt(std::max(0.0, ri * ri - along * along));
        const Point mid = u.centers[i] + delta * (along / dd);
        const Point perp{-delta[1] / dd, delta[0] / dd};
        for (double side : {1.0, -1.0}) {
          const Point p = mid + perp * (side * h);
          // Leaving a corner along the sum of both outward normals clears
          // both discs at once.
          Point normal = (p - u.centers[i]) * (1.0 / ri) + (p - u.centers[j]) * (1.0 / rj);
          const double n = normal.norm();
          if (n == 0.0) continue;
          consider(p, i, j, normal * (1.0 / n));
        }
      }
    }
  }

  double push = kExteriorPush;
  Point y = best + outward * push;
  for (int tries = 0; contains(y) && tries < 40; ++tries) {
    push *= 2.0;
    y = best + outward * push;
  }
  if (contains(y)) y = x + ray * (t_exit + kExteriorPush);
  return y;
}

}  // namespace fracwos
