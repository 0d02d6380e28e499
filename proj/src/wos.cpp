#include "fracwos/wos.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracwos/errors.hpp"

namespace fracwos {

WalkResult run_walk(const Domain& domain, const StableParams& params, const Point& x0,
                    const std::optional<SourceTerm>& f, const WalkOptions& opt, RngStream& rng) {
  if (x0.dim() != domain.dim() || domain.dim() != params.dim()) {
    throw DomainError("run_walk: dimensions of start point, domain and parameters differ");
  }
  if (!domain.contains(x0)) throw DomainError("run_walk: start point lies outside the domain");
  if (f && params.dim() != 2) throw DomainError("run_walk: source terms are supported in d = 2 only");

  WalkResult walk;
  Point rho = x0;
  while (true) {
    if (walk.steps >= opt.step_cap) {
      throw StepCapExceeded("walk exceeded step cap of " + std::to_string(opt.step_cap), walk.steps);
    }
    const double r = domain.inscribed_radius(rho);
    if (opt.record_path) {
      walk.centers.push_back(rho);
      walk.radii.push_back(r);
    }
    if (f) walk.source_acc += source_increment(rho, r, *f, params, opt.n_inner, rng);
    const Point next = sample_exit_ball(rho, r, params, rng);
    ++walk.steps;
    if (!domain.contains(next)) {
      walk.exit_point = next;
      walk.termination = Termination::ExactExit;
      return walk;
    }
    if (opt.eps_skin > 0.0 && domain.inscribed_radius(next) < opt.eps_skin) {
      walk.exit_point = next;
      walk.termination = Termination::EpsSkin;
      return walk;
    }
    rho = next;
  }
}

double dirichlet_payoff(const WalkResult& walk, const ExteriorData& g, const Domain& domain) {
  if (walk.termination == Termination::ExactExit) return g(walk.exit_point);
  return g(domain.nearest_exterior(walk.exit_point));
}

double source_increment(const Point& rho, double r, const SourceTerm& f, const StableParams& params,
                        std::size_t n_inner, RngStream& rng) {
  if (rho.dim() != 2) throw DomainError("source_increment: supported in d = 2 only");
  if (n_inner == 0) throw DomainError("source_increment: n_inner must be positive");
  const double alpha = params.alpha();
  const double f0 = f(rho);
  double correction = 0.0;
  for (std::size_t k = 0; k < n_inner; ++k) {
    const double u = rng.uniform();
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double radius = std::pow(u, 1.0 / alpha);
    const double weight = specfun::reg_inc_beta_upper(radius * radius, params.exit_shapes());
    const Point y{rho[0] + r * radius * std::cos(theta), rho[1] + r * radius * std::sin(theta)};
    correction += weight * (f(y) - f0);
  }
  correction /= static_cast<double>(n_inner);
  return params.a2() * std::pow(r, alpha) * (params.kappa() * f0 + correction);
}

double chi_sample(const ProblemSpec& problem, const Point& x0, RngStream& rng) {
  WalkOptions opt;
  opt.eps_skin = problem.eps_skin;
  opt.n_inner = problem.n_inner;
  opt.step_cap = problem.step_cap;
  opt.record_path = false;
  const WalkResult walk = run_walk(problem.domain, problem.params, x0, problem.f, opt, rng);
  return dirichlet_payoff(walk, problem.g, problem.domain) + walk.source_acc;
}

PathRecord simulate_path(const Point& x0, const StableParams& params, double tol, std::uint64_t step_cap,
                         RngStream& rng) {
  if (!(tol > 0.0)) throw DomainError("simulate_path: tolerance must be positive");
  if (x0.dim() != params.dim()) throw DomainError("simulate_path: start point dimension does not match");
  PathRecord path;
  path.tolerance = tol;
  path.points.reserve(step_cap + 1);
  path.jump_flags.reserve(step_cap);
  path.points.push_back(x0);
  for (std::uint64_t n = 0; n < step_cap; ++n) {
    path.points.push_back(path.points.back() + tol * sample_exit_unit_ball(params, rng));
    path.jump_flags.push_back(true);
  }
  return path;
}

}  // namespace fracwos
