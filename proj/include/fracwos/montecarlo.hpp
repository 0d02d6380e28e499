#pragma once

// Estimator drivers. Sample i always draws from RngStream(seed, i), so the
// set of samples is fixed by (seed, n) alone; the parallel drivers fold
// fixed-size blocks in index order, which makes results independent of the
// worker count.

#include <cstdint>
#include <map>
#include <string>

#include "fracwos/errors.hpp"
#include "fracwos/estimate.hpp"
#include "fracwos/geometry.hpp"
#include "fracwos/problem.hpp"
#include "fracwos/stable.hpp"

namespace fracwos {

enum class StopReason { FixedBudget, Tolerance, MaxSamples };

std::string to_string(StopReason reason);

struct McResult {
  Estimate estimate;
  StopReason stop = StopReason::FixedBudget;
  std::uint64_t attempted = 0;  ///< walks started, including aborted ones
  std::uint64_t aborted = 0;    ///< walks that hit the step cap (excluded from the estimate)
  double wall_seconds = 0.0;
};

/// Adaptive run hit n_max before its standard error dropped below tol.
class SamplingToleranceNotReached : public ToleranceNotReached {
 public:
  explicit SamplingToleranceNotReached(const McResult& partial);
  const McResult& partial() const noexcept { return partial_; }

 private:
  McResult partial_;
};

/// n_samples iid χ samples at x0, OpenMP-parallel over fixed blocks.
McResult estimate_fixed(const ProblemSpec& problem, const Point& x0, std::uint64_t n_samples, std::uint64_t seed,
                        int workers = 1);

/// Plain sequential loop over the same samples; the reference the parallel
/// driver is tested against.
McResult estimate_fixed_serial(const ProblemSpec& problem, const Point& x0, std::uint64_t n_samples,
                               std::uint64_t seed);

struct AdaptivePlan {
  double tol = 1e-3;
  std::uint64_t batch = 10'000;
  std::uint64_t n_min = 10'000;
  std::uint64_t n_max = 100'000'000;
};

/// Add batches until the standard error falls below plan.tol. Throws
/// SamplingToleranceNotReached at plan.n_max.
McResult estimate_adaptive(const ProblemSpec& problem, const Point& x0, const AdaptivePlan& plan, std::uint64_t seed,
                           int workers = 1);

/// Distribution of the number of steps N over independent walks.
struct StepHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t runs = 0;
  double mean_steps = 0.0;

  /// Empirical P(N > n).
  double tail(std::uint64_t n) const;
  /// Binomial standard error of tail(n).
  double tail_se(std::uint64_t n) const;
  /// Number of runs with N > n.
  std::uint64_t tail_count(std::uint64_t n) const;
  std::uint64_t max_steps() const;
  /// Standard error of mean_steps.
  double mean_se() const;

  double sum_sq_steps = 0.0;  ///< Σ N², for mean_se
};

StepHistogram step_statistics(const Domain& domain, const StableParams& params, const Point& x0,
                              std::uint64_t runs, double eps_skin, std::uint64_t seed, int workers = 1,
                              std::uint64_t step_cap = 1'000'000);

enum class PMethod { Quadrature, MonteCarlo };

struct GeometricParameter {
  double value = 0.0;
  double error = 0.0;  ///< quadrature error estimate or Monte Carlo standard error
  std::uint64_t samples = 0;
};

/// p(α, d): probability that a unit-ball exit from the origin lands beyond the
/// tangent hyperplane {x_1 = -1}. Quadrature needs d = 2; Monte Carlo works in
/// any dimension and runs until its standard error is below tol.
GeometricParameter geometric_parameter(const StableParams& params, PMethod method, double tol, std::uint64_t seed,
                                       int workers = 1);

}  // namespace fracwos
