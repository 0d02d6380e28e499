#include "fracwos/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "fracwos/parallel.hpp"
#include "fracwos/quadrature.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/wos.hpp"

namespace fracwos {

namespace {

struct BlockPartial {
  Estimate estimate;
  std::uint64_t aborted = 0;
};

BlockPartial sample_block(const ProblemSpec& problem, const Point& x0, std::uint64_t seed, std::uint64_t begin,
                          std::uint64_t len) {
  BlockPartial part;
  for (std::uint64_t i = begin; i < begin + len; ++i) {
    RngStream rng(seed, i);
    try {
      part.estimate.add(chi_sample(problem, x0, rng));
    } catch (const StepCapExceeded&) {
      ++part.aborted;
    }
  }
  return part;
}

// Folds [first, first + count) into `into`, in block order.
void accumulate(McResult& into, const ProblemSpec& problem, const Point& x0, std::uint64_t seed,
                std::uint64_t first, std::uint64_t count, int workers) {
  const auto parts = run_blocks<BlockPartial>(first, count, workers, [&](std::uint64_t begin, std::uint64_t len) {
    return sample_block(problem, x0, seed, begin, len);
  });
  for (const auto& p : parts) {
    into.estimate.merge(p.estimate);
    into.aborted += p.aborted;
  }
  into.attempted += count;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_start(const ProblemSpec& problem, const Point& x0) {
  problem.validate();
  if (x0.dim() != problem.domain.dim() || !problem.domain.contains(x0)) {
    throw DomainError("estimate: start point lies outside the domain");
  }
}

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::FixedBudget:
      return "fixed_budget";
    case StopReason::Tolerance:
      return "tolerance";
    case StopReason::MaxSamples:
      return "max_samples";
  }
  return "unknown";
}

SamplingToleranceNotReached::SamplingToleranceNotReached(const McResult& partial)
    : ToleranceNotReached("adaptive sampling reached n_max before the target standard error",
                          partial.estimate.mean(), partial.estimate.std_error()),
      partial_(partial) {}

McResult estimate_fixed(const ProblemSpec& problem, const Point& x0, std::uint64_t n_samples, std::uint64_t seed,
                        int workers) {
  if (n_samples < 2) throw DomainError("estimate_fixed: n_samples must be at least 2");
  check_start(problem, x0);
  const auto start = std::chrono::steady_clock::now();
  McResult out;
  accumulate(out, problem, x0, seed, 0, n_samples, workers);
  out.stop = StopReason::FixedBudget;
  out.wall_seconds = seconds_since(start);
  return out;
}

McResult estimate_fixed_serial(const ProblemSpec& problem, const Point& x0, std::uint64_t n_samples,
                               std::uint64_t seed) {
  if (n_samples < 2) throw DomainError("estimate_fixed: n_samples must be at least 2");
  check_start(problem, x0);
  const auto start = std::chrono::steady_clock::now();
  McResult out;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, i);
    try {
      out.estimate.add(chi_sample(problem, x0, rng));
    } catch (const StepCapExceeded&) {
      ++out.aborted;
    }
  }
  out.attempted = n_samples;
  out.stop = StopReason::FixedBudget;
  out.wall_seconds = seconds_since(start);
  return out;
}

McResult estimate_adaptive(const ProblemSpec& problem, const Point& x0, const AdaptivePlan& plan, std::uint64_t seed,
                           int workers) {
  if (!(plan.tol > 0.0)) throw DomainError("estimate_adaptive: tol must be positive");
  if (plan.n_min < 2) throw DomainError("estimate_adaptive: n_min must be at least 2");
  if (plan.batch == 0) throw DomainError("estimate_adaptive: batch must be positive");
  if (plan.n_max < plan.n_min) throw DomainError("estimate_adaptive: n_max must be at least n_min");
  check_start(problem, x0);
  const auto start = std::chrono::steady_clock::now();
  McResult out;
  std::uint64_t count = plan.n_min;
  while (true) {
    accumulate(out, problem, x0, seed, out.attempted, count, workers);
    if (out.estimate.n() >= 2 && out.estimate.std_error() < plan.tol) {
      out.stop = StopReason::Tolerance;
      break;
    }
    if (out.attempted >= plan.n_max) {
      out.stop = StopReason::MaxSamples;
      out.wall_seconds = seconds_since(start);
      throw SamplingToleranceNotReached(out);
    }
    count = std::min(plan.batch, plan.n_max - out.attempted);
  }
  out.wall_seconds = seconds_since(start);
  return out;
}

double StepHistogram::tail(std::uint64_t n) const {
  return runs == 0 ? 0.0 : static_cast<double>(tail_count(n)) / static_cast<double>(runs);
}

double StepHistogram::tail_se(std::uint64_t n) const {
  if (runs == 0) return 0.0;
  const double t = tail(n);
  return std::sqrt(t * (1.0 - t) / static_cast<double>(runs));
}

std::uint64_t StepHistogram::tail_count(std::uint64_t n) const {
  std::uint64_t above = 0;
  for (auto it = counts.upper_bound(n); it != counts.end(); ++it) above += it->second;
  return above;
}

std::uint64_t StepHistogram::max_steps() const { return counts.empty() ? 0 : counts.rbegin()->first; }

double StepHistogram::mean_se() const {
  if (runs < 2) return 0.0;
  const double n = static_cast<double>(runs);
  const double var = std::max(0.0, (sum_sq_steps - n * mean_steps * mean_steps) / (n - 1.0));
  return std::sqrt(var / n);
}

StepHistogram step_statistics(const Domain& domain, const StableParams& params, const Point& x0,
                              std::uint64_t runs, double eps_skin, std::uint64_t seed, int workers,
                              std::uint64_t step_cap) {
  if (runs == 0) throw DomainError("step_statistics: runs must be positive");
  if (!domain.contains(x0)) throw DomainError("step_statistics: start point lies outside the domain");
  WalkOptions opt;
  opt.eps_skin = eps_skin;
  opt.step_cap = step_cap;
  opt.record_path = false;
  using Counts = std::map<std::uint64_t, std::uint64_t>;
  const auto parts = run_blocks<Counts>(0, runs, workers, [&](std::uint64_t begin, std::uint64_t len) {
    Counts c;
    for (std::uint64_t i = begin; i < begin + len; ++i) {
      RngStream rng(seed, i);
      ++c[run_walk(domain, params, x0, std::nullopt, opt, rng).steps];
    }
    return c;
  });
  StepHistogram h;
  for (const auto& part : parts) {
    for (const auto& [steps, count] : part) h.counts[steps] += count;
  }
  h.runs = runs;
  double sum = 0.0;
  for (const auto& [steps, count] : h.counts) {
    const double s = static_cast<double>(steps);
    sum += s * static_cast<double>(count);
    h.sum_sq_steps += s * s * static_cast<double>(count);
  }
  h.mean_steps = sum / static_cast<double>(runs);
  return h;
}

namespace {

// p(α, 2) = π^{-2} sin(πα/2) ∫_{x_1 < -1} (|x|² - 1)^{-α/2} |x|^{-2} dx, as an
// iterated polar integral: θ over the arc |θ - π| < acos(1/r) inside r over
// (1, ∞). The radial range is split at r = 2 with substitutions that absorb
// the (r² - 1)^{-α/2} edge singularity and map the tail to a finite interval.
GeometricParameter p_quadrature(const StableParams& params, double tol) {
  using std::numbers::pi;
  const double alpha = params.alpha();
  quad::QuadOptions inner_opt;
  inner_opt.abs_tol = tol * 1e-3;
  auto angular = [&](double r, double radial_weight) {
    const double half_width = std::acos(1.0 / r);
    return quad::integrate_or_throw([&](double) { return radial_weight; }, pi - half_width, pi + half_width,
                                    inner_opt);
  };
  // r² - 1 = v^{2/(2-α)}: (r² - 1)^{-α/2} r^{-1} dr = dv / ((2 - α) r²).
  auto near = [&](double v) {
    const double r = std::sqrt(1.0 + std::pow(v, 2.0 / (2.0 - alpha)));
    return angular(r, 1.0 / ((2.0 - alpha) * r * r));
  };
  // r = 2 t^{-1/α}: (r² - 1)^{-α/2} r^{-1} dr = 2^{-α} α^{-1} (1 - r^{-2})^{-α/2} dt.
  auto far = [&](double t) {
    const double r = 2.0 * std::pow(t, -1.0 / alpha);
    return angular(r, std::pow(2.0, -alpha) / alpha * std::pow(1.0 - 1.0 / (r * r), -alpha / 2.0));
  };
  quad::QuadOptions opt;
  opt.abs_tol = 0.25 * tol;
  const auto a = quad::integrate(near, 0.0, std::pow(3.0, (2.0 - alpha) / 2.0), opt);
  const auto b = quad::integrate(far, 0.0, 1.0, opt);
  const double scale = params.sin_half_pi_alpha() / (pi * pi);
  GeometricParameter out;
  out.value = scale * (a.value + b.value);
  out.error = scale * (a.abs_error + b.abs_error);
  if (!a.converged || !b.converged) {
    throw ToleranceNotReached("p(alpha, 2) quadrature did not reach tolerance", out.value, out.error);
  }
  return out;
}

GeometricParameter p_monte_carlo(const StableParams& params, double tol, std::uint64_t seed, int workers) {
  constexpr std::uint64_t kMinDraws = 10'000;
  constexpr std::uint64_t kBatch = 1'000'000;
  constexpr std::uint64_t kMaxDraws = 1'000'000'000;
  Estimate est;
  std::uint64_t drawn = 0;
  std::uint64_t count = kMinDraws;
  while (true) {
    const auto parts = run_blocks<Estimate>(drawn, count, workers, [&](std::uint64_t begin, std::uint64_t len) {
      Estimate e;
      for (std::uint64_t i = begin; i < begin + len; ++i) {
        RngStream rng(seed, i);
        e.add(sample_exit_unit_ball(params, rng)[0] < -1.0 ? 1.0 : 0.0);
      }
      return e;
    });
    for (const auto& e : parts) est.merge(e);
    drawn += count;
    if (est.std_error() < tol && est.mean() > 0.0) break;
    if (drawn >= kMaxDraws) {
      throw ToleranceNotReached("p(alpha, d) Monte Carlo did not reach tolerance", est.mean(), est.std_error());
    }
    count = std::min(kBatch, kMaxDraws - drawn);
  }
  return {est.mean(), est.std_error(), est.n()};
}

}  // namespace

GeometricParameter geometric_parameter(const StableParams& params, PMethod method, double tol, std::uint64_t seed,
                                       int workers) {
  if (!(tol > 0.0)) throw DomainError("geometric_parameter: tol must be positive");
  if (method == PMethod::Quadrature) {
    if (params.dim() != 2) throw DomainError("geometric_parameter: quadrature is available for d = 2 only");
    return p_quadrature(params, tol);
  }
  return p_monte_carlo(params, tol, seed, workers);
}

}  // namespace fracwos
