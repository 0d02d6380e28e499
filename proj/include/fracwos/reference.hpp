#pragma once

// Closed-form and quadrature reference solutions on the unit disc.

#include <functional>

#include "fracwos/point.hpp"
#include "fracwos/stable.hpp"

namespace fracwos {

/// |x - y|^{α-d}: free-space Green's function of (-Δ)^{α/2} with unit
/// constant. Harmonic in any domain avoiding y.
double green_reference(const Point& x, const Point& y, const StableParams& params);

/// Poisson kernel of the unit disc, P(x, z) = π^{-2} sin(πα/2)
/// ((1 - |x|²)/(|z|² - 1))^{α/2} |z - x|^{-2}, |x| < 1 < |z|.
double disc_poisson_kernel(const Point& x, const Point& z, const StableParams& params);

/// ∫_{|z| > 1} P(x, z) g(z) dz by iterated adaptive quadrature, truncated at
/// |z| = rho_max. The (|z|² - 1)^{-α/2} edge singularity is removed by
/// |z|² - 1 = v^{2/(2-α)}.
double disc_exterior_integral(const Point& x, const std::function<double(const Point&)>& g,
                              const StableParams& params, double quad_tol, double rho_max);

/// Solution at x of the disc problem with exterior data exp(-|z - y0|²) and
/// no source. Cached per (x, y0, α, quad_tol).
double ball_poisson_reference(const Point& x, const Point& y0, const StableParams& params, double quad_tol = 1e-8);

/// max(0, 1 - |x|²)^{1 + α/2}.
double dyda_exact(const Point& x, double alpha);

/// 2^α Γ(2+α/2) Γ(1+α/2) (1 - (1+α/2)|x|²), the source with solution dyda_exact.
double dyda_source(const Point& x, double alpha);

}  // namespace fracwos
