#include "fracwos/stable.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "fracwos/errors.hpp"
#include "fracwos/quadrature.hpp"

namespace fracwos {

namespace {

using std::numbers::ln2;
using std::numbers::pi;

// Largest u accepted by the radius quantile. Beyond it the radius would
// overflow; the clamp moves less than one ulp of probability mass.
constexpr double kMaxExitU = 1.0 - 0x1.0p-53;

double compute_kappa(double alpha, const specfun::BetaParams& shapes) {
  // R = T^{1/α} with T uniform, so κ = ∫_0^1 (1 - I(T^{2/α})) dT.
  auto integrand = [&](double t) {
    const double rho_sq = std::pow(t, 2.0 / alpha);
    if (rho_sq >= 1.0) return 0.0;
    return specfun::reg_inc_beta_upper(rho_sq, shapes);
  };
  quad::QuadOptions opt;
  opt.abs_tol = 1e-12;
  return quad::integrate_or_throw(integrand, 0.0, 1.0, opt);
}

}  // namespace

StableParams::StableParams(double alpha, std::size_t dim)
    : alpha_(alpha),
      dim_(dim),
      gamma_half_dim_(0.0),
      sin_half_pi_alpha_(0.0),
      beta_half_alpha_(0.0),
      c2_(0.0),
      a2_(0.0),
      exit_shapes_(alpha > 0.0 && alpha < 2.0 ? specfun::BetaParams(1.0 - alpha / 2.0, alpha / 2.0)
                                              : specfun::BetaParams(1.0, 1.0)),
      kappa_(std::make_shared<KappaMemo>()) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
  if (dim < 2 || dim > kMaxDim) throw DomainError("dimension must lie in [2, 8]");
  using specfun::log_beta;
  using specfun::log_gamma;
  const double half = alpha / 2.0;
  gamma_half_dim_ = std::exp(log_gamma(static_cast<double>(dim) / 2.0));
  sin_half_pi_alpha_ = std::sin(pi * half);
  beta_half_alpha_ = std::exp(log_beta(half, 1.0 - half));
  c2_ = std::exp(-alpha * ln2 - std::log(pi) - 2.0 * log_gamma(half));
  a2_ = std::exp(-std::log(alpha) + (1.0 - alpha) * ln2 - 2.0 * log_gamma(half) + log_beta(1.0 - half, half));
}

double StableParams::kappa() const {
  std::call_once(kappa_->once, [this] { kappa_->value = compute_kappa(alpha_, exit_shapes_); });
  return kappa_->value;
}

double exit_radius_quantile(double u, const StableParams& params) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("exit_radius_quantile: u must lie in (0, 1)");
  u = std::min(u, kMaxExitU);
  // F(r) = I(1 - r^{-2}; 1-α/2, α/2); solve for y = 1 - r^{-2}.
  const auto q = specfun::inv_reg_inc_beta_pair(u, params.exit_shapes());
  double r = q.x <= 0.5 ? std::exp(-0.5 * std::log1p(-q.x)) : 1.0 / std::sqrt(q.one_minus_x);
  if (!std::isfinite(r)) r = std::numeric_limits<double>::max();
  return std::max(r, std::nextafter(1.0, 2.0));
}

double exit_radius_cdf(double r, const StableParams& params) {
  if (!(r >= 1.0)) throw DomainError("exit_radius_cdf: r must be >= 1");
  if (std::isinf(r)) return 1.0;
  const double y = (r - 1.0) * (r + 1.0) / (r * r);
  // Far out, 1 - y = r^{-2} is exact and the reflected form keeps the digits.
  if (y > 0.5) return specfun::reg_inc_beta_upper(1.0 / (r * r), params.exit_shapes().swapped());
  return specfun::reg_inc_beta(y, params.exit_shapes());
}

Point sample_direction(std::size_t dim, RngStream& rng) {
  Point dir(dim);
  if (dim == 2) {
    const double theta = 2.0 * pi * rng.uniform();
    dir[0] = std::cos(theta);
    dir[1] = std::sin(theta);
    return dir;
  }
  double norm = 0.0;
  do {
    for (double& c : dir) c = rng.normal();
    norm = dir.norm();
  } while (norm == 0.0);
  return dir * (1.0 / norm);
}

Point sample_exit_unit_ball(const StableParams& params, RngStream& rng) {
  const double r = exit_radius_quantile(rng.uniform(), params);
  return sample_direction(params.dim(), rng) * r;
}

Point sample_exit_ball(const Point& center, double radius, const StableParams& params, RngStream& rng) {
  if (!(radius > 0.0)) throw DomainError("sample_exit_ball: radius must be positive");
  return center + radius * sample_exit_unit_ball(params, rng);
}

double exit_density(const Point& y, const StableParams& params) {
  const double r2 = y.norm_sq();
  if (!(r2 > 1.0)) throw DomainError("exit_density: |y| must exceed 1");
  const double d = static_cast<double>(params.dim());
  return std::pow(pi, -(d / 2.0 + 1.0)) * params.gamma_half_dim() * params.sin_half_pi_alpha() *
         std::pow(r2 - 1.0, -params.alpha() / 2.0) * std::pow(r2, -d / 2.0);
}

double sample_occupation_radius(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
  return std::pow(rng.uniform(), 1.0 / alpha);
}

double occupation_profile(double rho_sq, const StableParams& params) {
  if (!(rho_sq > 0.0 && rho_sq < 1.0)) throw DomainError("occupation_profile: rho^2 must lie in (0, 1)");
  return specfun::reg_inc_beta_upper(rho_sq, params.exit_shapes());
}

double occupation_profile(double rho_sq, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0, 2)");
  if (!(rho_sq > 0.0 && rho_sq < 1.0)) throw DomainError("occupation_profile: rho^2 must lie in (0, 1)");
  return specfun::reg_inc_beta_upper(rho_sq, specfun::BetaParams(1.0 - alpha / 2.0, alpha / 2.0));
}

double occupation_density(const Point& y, const StableParams& params) {
  const double r2 = y.norm_sq();
  if (!(r2 < 1.0)) throw DomainError("occupation_density: |y| must be below 1");
  if (r2 == 0.0) return std::numeric_limits<double>::infinity();
  using specfun::log_gamma;
  const double a = params.alpha();
  const double d = static_cast<double>(params.dim());
  // The u-integral becomes B((d-α)/2, α/2) (1 - I(|y|²; (d-α)/2, α/2)) under u = (1-t)/t.
  const specfun::BetaParams shapes((d - a) / 2.0, a / 2.0);
  const double log_const = -a * ln2 - (d / 2.0) * std::log(pi) + log_gamma(d / 2.0) - 2.0 * log_gamma(a / 2.0) +
                           shapes.log_beta();
  return std::exp(log_const) * std::pow(r2, (a - d) / 2.0) * specfun::reg_inc_beta_upper(r2, shapes);
}

double kappa_const(double alpha) {
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  const double value = StableParams(alpha, 2).kappa();
  std::lock_guard lock(mutex);
  cache.emplace(alpha, value);
  return value;
}

}  // namespace fracwos
