#pragma once

// Independent reference values for the tests. Nothing here calls into the
// library: incomplete beta values come from Boost, integrals from Boost's
// double-exponential and Gauss-Kronrod quadrature, and the rest from closed
// forms written out directly.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace oracle {

using std::numbers::pi;

inline double ibeta(double x, double a, double b) { return boost::math::ibeta(a, b, x); }
inline double ibetac(double x, double a, double b) { return boost::math::ibetac(a, b, x); }
inline double ibeta_inv(double q, double a, double b) { return boost::math::ibeta_inv(a, b, q); }

/// I(x; 1/2, 1/2), using the reflected form above 1/2 where asin(√x) is
/// ill-conditioned.
inline double arcsine_cdf(double x) {
  if (x <= 0.5) return 2.0 / pi * std::asin(std::sqrt(x));
  return 1.0 - 2.0 / pi * std::asin(std::sqrt(1.0 - x));
}

/// Density of |Y| for the unit-ball exit from the origin, obtained by
/// multiplying the exit density by the sphere area |S^{d-1}| r^{d-1}.
inline double exit_radius_density(double r, double alpha, int d, double r_minus_1) {
  const double hd = 0.5 * d;
  const double density = std::pow(pi, -(hd + 1.0)) * std::tgamma(hd) * std::sin(pi * alpha / 2) *
                         std::pow(r_minus_1 * (r + 1.0), -alpha / 2) * std::pow(r, -d);
  const double sphere = 2.0 * std::pow(pi, hd) / std::tgamma(hd);
  return density * sphere * std::pow(r, d - 1);
}

inline double exit_radius_density(double r, double alpha, int d) {
  return exit_radius_density(r, alpha, d, r - 1.0);
}

/// P(|Y| <= r) by quadrature of exit_radius_density. Near r = 1 tanh_sinh
/// hands over the distance to the endpoint, so r - 1 is never rounded away.
inline double exit_radius_cdf(double r, double alpha, int d) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double mid = 0.5 * (1.0 + r);
  return ts.integrate(
      [&](double s, double sc) { return exit_radius_density(s, alpha, d, s < mid ? -sc : s - 1.0); }, 1.0, r);
}

/// Total mass of the exit law.
inline double exit_mass(double alpha, int d) {
  boost::math::quadrature::exp_sinh<double> es;
  return exit_radius_cdf(2.0, alpha, d) +
         es.integrate([&](double s) { return exit_radius_density(s, alpha, d); }, 2.0,
                      std::numeric_limits<double>::infinity());
}

/// E_0 of the exit time of the unit ball in d = 2: 2^{-α} / Γ(1 + α/2)².
inline double mean_exit_time_disc(double alpha) {
  const double g = std::tgamma(1.0 + alpha / 2);
  return std::pow(2.0, -alpha) / (g * g);
}

/// Occupation density of the unit disc started at 0, in |y|, from Boost.
inline double occupation_density_disc(double s, double alpha) {
  const double a = 1.0 - alpha / 2, b = alpha / 2;
  const double ga = std::tgamma(alpha / 2);
  return std::pow(2.0, -alpha) / (pi * ga * ga) * std::pow(s, alpha - 2) * boost::math::beta(a, b) *
         ibetac(s * s, a, b);
}

/// p(α, 2) as a Cartesian double integral over {x_1 < -1}; x_1 = -1 - s.
inline double p_disc(double alpha) {
  boost::math::quadrature::exp_sinh<double> es;
  const double inf = std::numeric_limits<double>::infinity();
  auto outer = [&](double s) {
    const double x1sq = (1.0 + s) * (1.0 + s);
    auto inner = [&](double x2) {
      const double excess = s * (2.0 + s) + x2 * x2;  // |x|² - 1 without cancellation
      if (excess <= 0.0) return 0.0;
      return std::pow(excess, -alpha / 2) / (x1sq + x2 * x2);
    };
    return 2.0 * es.integrate(inner, 0.0, inf, 1e-12);
  };
  return std::sin(pi * alpha / 2) / (pi * pi) * es.integrate(outer, 0.0, inf, 1e-10);
}

/// u(0) for the disc with exterior data exp(-|z - y0|²), via the angular
/// integral ∫ exp(-|z - y0|²) dφ = 2π exp(-ρ² - |y0|²) I_0(2ρ|y0|).
inline double gaussian_disc_at_origin(double alpha, double y0_norm) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double rho, double rho_minus_1) {
    const double ring = 2.0 * pi * std::exp(-rho * rho - y0_norm * y0_norm) *
                        std::cyl_bessel_i(0.0, 2.0 * rho * y0_norm);
    return std::pow(rho_minus_1 * (rho + 1.0), -alpha / 2) / (rho * rho) * ring * rho;
  };
  // Near ρ = 1 tanh_sinh supplies the distance to the endpoint directly.
  const double near = ts.integrate([&](double rho, double c) { return f(rho, rho < 1.5 ? -c : rho - 1.0); }, 1.0, 2.0);
  const double far = ts.integrate([&](double rho) { return f(rho, rho - 1.0); }, 2.0, y0_norm + 12.0);
  return std::sin(pi * alpha / 2) / (pi * pi) * (near + far);
}

/// Brute-force distance from x to the complement of a union of discs:
/// minimum distance to boundary points not covered by another disc.
inline double union_complement_distance(double x, double y, const std::vector<std::array<double, 2>>& centers,
                                        double radius, int samples_per_circle = 200000) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double dx = x - centers[i][0], dy = y - centers[i][1];
    if (std::sqrt(dx * dx + dy * dy) > radius + best) continue;
    for (int k = 0; k < samples_per_circle; ++k) {
      const double t = 2.0 * pi * k / samples_per_circle;
      const double bx = centers[i][0] + radius * std::cos(t), by = centers[i][1] + radius * std::sin(t);
      bool covered = false;
      for (std::size_t j = 0; j < centers.size() && !covered; ++j) {
        if (j == i) continue;
        const double ex = bx - centers[j][0], ey = by - centers[j][1];
        covered = ex * ex + ey * ey < radius * radius * (1.0 - 1e-12);
      }
      if (!covered) best = std::min(best, std::hypot(bx - x, by - y));
    }
  }
  return best;
}

/// Kolmogorov distribution tail P(K > t) for the one-sample KS statistic.
inline double ks_pvalue(double d, std::size_t n) {
  const double t = (std::sqrt(static_cast<double>(n)) + 0.12 + 0.11 / std::sqrt(static_cast<double>(n))) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) sum += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * t * t);
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace oracle
