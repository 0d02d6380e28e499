#pragma once

// Exact sampling for the isotropic alpha-stable process: exit position from a
// ball started at its centre, the radial law of the expected occupation
// measure inside the unit ball, and the closed-form densities behind them.

#include <cstddef>
#include <memory>
#include <mutex>

#include "fracwos/point.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/specfun.hpp"

namespace fracwos {

/// Stability index alpha in (0, 2) and dimension d >= 2, with every
/// alpha-dependent constant computed once.
class StableParams {
 public:
  StableParams(double alpha, std::size_t dim);

  double alpha() const noexcept { return alpha_; }
  std::size_t dim() const noexcept { return dim_; }

  double gamma_half_dim() const noexcept { return gamma_half_dim_; }  ///< Γ(d/2)
  double sin_half_pi_alpha() const noexcept { return sin_half_pi_alpha_; }  ///< sin(πα/2)
  double beta_half_alpha() const noexcept { return beta_half_alpha_; }  ///< B(α/2, 1-α/2)
  double c2() const noexcept { return c2_; }  ///< c_{2,α} = 2^{-α} π^{-1} Γ(α/2)^{-2}
  double a2() const noexcept { return a2_; }  ///< a_{2,α} = α^{-1} 2^{1-α} Γ(α/2)^{-2} B(1-α/2, α/2)

  /// Shapes (1-α/2, α/2): I(1 - r^{-2}; ·) is the radial exit CDF and
  /// 1 - I(ρ²; ·) the occupation profile.
  const specfun::BetaParams& exit_shapes() const noexcept { return exit_shapes_; }

  /// κ(α) = E[1 - I(R²; 1-α/2, α/2)], R with density α r^{α-1} on (0, 1).
  /// Computed by quadrature on first use and shared by all copies.
  double kappa() const;

 private:
  struct KappaMemo {
    std::once_flag once;
    double value = 0.0;
  };

  double alpha_;
  std::size_t dim_;
  double gamma_half_dim_;
  double sin_half_pi_alpha_;
  double beta_half_alpha_;
  double c2_;
  double a2_;
  specfun::BetaParams exit_shapes_;
  std::shared_ptr<KappaMemo> kappa_;
};

/// u-quantile of |X_σ| for the unit ball started at 0, u in (0, 1).
double exit_radius_quantile(double u, const StableParams& params);

/// Radial exit CDF P(|X_σ| <= r) for the unit ball, r >= 1.
double exit_radius_cdf(double r, const StableParams& params);

/// Uniform direction on S^{d-1}.
Point sample_direction(std::size_t dim, RngStream& rng);

/// Exit position from B(0, 1) for the process started at the origin.
Point sample_exit_unit_ball(const StableParams& params, RngStream& rng);

/// Exit position from B(center, radius) for the process started at center.
Point sample_exit_ball(const Point& center, double radius, const StableParams& params, RngStream& rng);

/// Density of the unit-ball exit position at |y| > 1.
double exit_density(const Point& y, const StableParams& params);

/// Density α r^{α-1} sample on (0, 1), via U^{1/α}.
double sample_occupation_radius(double alpha, RngStream& rng);

/// 1 - I(ρ²; 1-α/2, α/2) for ρ² in (0, 1).
double occupation_profile(double rho_sq, double alpha);
double occupation_profile(double rho_sq, const StableParams& params);

/// Density of the expected occupation measure V_1(0, dy) of the unit ball,
/// |y| < 1, any d >= 2.
double occupation_density(const Point& y, const StableParams& params);

/// κ(α); see StableParams::kappa.
double kappa_const(double alpha);

}  // namespace fracwos
