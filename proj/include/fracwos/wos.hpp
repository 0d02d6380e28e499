#pragma once

// Walk-on-spheres for the fractional Laplacian. Each step jumps to the exit
// position of the stable process from the ball inscribed at the current
// point; the walk ends when a jump leaves the domain (or, optionally, lands
// within eps_skin of the boundary). The source term enters through the
// expected occupation measure of each visited ball.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fracwos/geometry.hpp"
#include "fracwos/point.hpp"
#include "fracwos/problem.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/stable.hpp"

namespace fracwos {

enum class Termination { ExactExit, EpsSkin };

struct WalkOptions {
  double eps_skin = 0.0;
  std::size_t n_inner = 1000;
  std::uint64_t step_cap = 1'000'000;
  bool record_path = true;  ///< fill centers/radii; estimators turn this off
};

struct WalkResult {
  std::vector<Point> centers;  ///< ρ_0 .. ρ_{N-1} (when recorded)
  std::vector<double> radii;   ///< inscribed radius used at each centre
  Point exit_point;            ///< ρ_N
  std::uint64_t steps = 0;     ///< N
  Termination termination = Termination::ExactExit;
  double source_acc = 0.0;  ///< Σ r_n^α V_1(0, f(ρ_n + r_n ·)) estimate; 0 without a source
};

/// Phase-space sample path: X_{n+1} = X_n + tol · E_{n+1}, E iid unit-ball exits.
struct PathRecord {
  std::vector<Point> points;
  std::vector<bool> jump_flags;  ///< per step; every step is a jump
  double tolerance = 0.0;
};

/// Run one walk from x0. Throws DomainError when x0 is outside the domain or
/// a source is given outside d = 2, and StepCapExceeded past opt.step_cap.
WalkResult run_walk(const Domain& domain, const StableParams& params, const Point& x0,
                    const std::optional<SourceTerm>& f, const WalkOptions& opt, RngStream& rng);

/// g(ρ_N) for an exact exit, g(nearest_exterior(ρ_N)) for an eps-skin stop.
double dirichlet_payoff(const WalkResult& walk, const ExteriorData& g, const Domain& domain);

/// r^α V_1(0, f(ρ + r ·)) estimated with n_inner occupation draws and f(ρ)
/// as control variate: a_{2,α} r^α [κ f(ρ) + mean (1 - I(R²)) (f(ρ + rRθ) - f(ρ))].
double source_increment(const Point& rho, double r, const SourceTerm& f, const StableParams& params,
                        std::size_t n_inner, RngStream& rng);

/// One unbiased sample χ = g(ρ_N) + Σ r_n^α V_1(0, f(ρ_n + r_n ·)) of u(x0).
double chi_sample(const ProblemSpec& problem, const Point& x0, RngStream& rng);

/// step_cap + 1 points starting at x0.
PathRecord simulate_path(const Point& x0, const StableParams& params, double tol, std::uint64_t step_cap,
                         RngStream& rng);

}  // namespace fracwos
