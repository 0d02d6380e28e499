#include "fracwos/reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "fracwos/errors.hpp"
#include "fracwos/problem.hpp"
#include "fracwos/quadrature.hpp"

namespace fracwos {

namespace {

using std::numbers::pi;

using CacheKey = std::tuple<double, double, double, double, double, double>;

std::mutex cache_mutex;
std::map<CacheKey, double>& poisson_cache() {
  static std::map<CacheKey, double> cache;
  return cache;
}

}  // namespace

double green_reference(const Point& x, const Point& y, const StableParams& params) {
  if (x.dim() != params.dim() || y.dim() != params.dim()) throw DomainError("green_reference: dimension mismatch");
  const double r = distance(x, y);
  if (r == 0.0) throw DomainError("green_reference: singular at x = y");
  return std::pow(r, params.alpha() - static_cast<double>(params.dim()));
}

double disc_poisson_kernel(const Point& x, const Point& z, const StableParams& params) {
  const double x2 = x.norm_sq();
  const double z2 = z.norm_sq();
  if (!(x2 < 1.0) || !(z2 > 1.0)) throw DomainError("disc_poisson_kernel: need |x| < 1 < |z|");
  return params.sin_half_pi_alpha() / (pi * pi) * std::pow((1.0 - x2) / (z2 - 1.0), params.alpha() / 2.0) /
         (z - x).norm_sq();
}

double disc_exterior_integral(const Point& x, const std::function<double(const Point&)>& g,
                              const StableParams& params, double quad_tol, double rho_max) {
  if (params.dim() != 2 || x.dim() != 2) throw DomainError("disc_exterior_integral: d = 2 only");
  const double x2 = x.norm_sq();
  if (!(x2 < 1.0)) throw DomainError("disc_exterior_integral: x must lie inside the unit disc");
  if (!(rho_max > 1.0)) throw DomainError("disc_exterior_integral: rho_max must exceed 1");
  const double alpha = params.alpha();
  const double prefactor = params.sin_half_pi_alpha() / (pi * pi) * std::pow(1.0 - x2, alpha / 2.0);
  const double split = std::min(2.0, rho_max);
  const double p = 2.0 / (2.0 - alpha);

  quad::QuadOptions inner;
  inner.abs_tol = quad_tol * 1e-2;
  inner.rel_tol = 1e-12;  // floor at rounding level for large ring values
  inner.max_intervals = 20000;
  auto ring = [&](double rho) {
    return quad::integrate_or_throw(
        [&](double phi) {
          const Point z{rho * std::cos(phi), rho * std::sin(phi)};
          return g(z) / (z - x).norm_sq();
        },
        -pi, pi, inner);
  };
  // ρ² - 1 = v^p:  (ρ² - 1)^{-α/2} ρ dρ = (p/2) v^{p - 1 - αp/2} dv = dv / (2 - α).
  auto near = [&](double v) {
    const double rho = std::sqrt(1.0 + std::pow(v, p));
    return ring(rho) / (2.0 - alpha);
  };
  // ρ = e^t keeps the slowly decaying tail smooth over many decades.
  auto far = [&](double t) {
    const double rho = std::exp(t);
    return ring(rho) * std::pow(rho * rho - 1.0, -alpha / 2.0) * rho * rho;
  };

  quad::QuadOptions outer;
  outer.abs_tol = 0.5 * quad_tol / prefactor;
  outer.rel_tol = 1e-12;
  outer.max_intervals = 20000;
  double total = quad::integrate_or_throw(near, 0.0, std::pow(split * split - 1.0, 1.0 / p), outer);
  if (rho_max > split) total += quad::integrate_or_throw(far, std::log(split), std::log(rho_max), outer);
  return prefactor * total;
}

double ball_poisson_reference(const Point& x, const Point& y0, const StableParams& params, double quad_tol) {
  if (params.dim() != 2 || x.dim() != 2 || y0.dim() != 2) throw DomainError("ball_poisson_reference: d = 2 only");
  if (!(x.norm_sq() < 1.0)) throw DomainError("ball_poisson_reference: x must lie inside the unit disc");
  const CacheKey key{x[0], x[1], y0[0], y0[1], params.alpha(), quad_tol};
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = poisson_cache().find(key); it != poisson_cache().end()) return it->second;
  }
  // exp(-|z - y0|²) < 1e-40 beyond |y0| + 10; the kernel decays as well.
  const double rho_max = std::max(2.0, y0.norm() + 10.0);
  const auto g = ExteriorData::gaussian(y0);
  const double value = disc_exterior_integral(x, [&](const Point& z) { return g(z); }, params, quad_tol, rho_max);
  std::lock_guard lock(cache_mutex);
  poisson_cache()[key] = value;
  return value;
}

double dyda_exact(const Point& x, double alpha) {
  return std::pow(std::max(0.0, 1.0 - x.norm_sq()), 1.0 + alpha / 2.0);
}

double dyda_source(const Point& x, double alpha) { return SourceTerm::dyda(alpha)(x); }

}  // namespace fracwos
