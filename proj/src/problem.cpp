#include "fracwos/problem.hpp"

#include <algorithm>
#include <cmath>

#include "fracwos/errors.hpp"
#include "fracwos/specfun.hpp"

namespace fracwos {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ExteriorData ExteriorData::constant(double value) { return ExteriorData(Constant{value}, true); }

ExteriorData ExteriorData::green(const Point& pole, const StableParams& params) {
  if (pole.dim() != params.dim()) throw DomainError("green: pole dimension does not match");
  const double d = static_cast<double>(params.dim());
  // g² ~ |x - pole|^{2α-2d} is integrable near the pole only when α > d/2.
  return ExteriorData(Green{pole, params.alpha() - d}, params.alpha() > d / 2.0);
}

ExteriorData ExteriorData::gaussian(const Point& center) { return ExteriorData(Gaussian{center}, true); }

ExteriorData ExteriorData::halfspace_indicator(const Point& normal, double offset) {
  return ExteriorData(HalfSpaceIndicator{normal, offset}, true);
}

ExteriorData ExteriorData::radial_table(std::vector<double> radii, std::vector<double> values) {
  if (radii.empty() || radii.size() != values.size()) {
    throw DomainError("radial_table: radii and values must be nonempty and the same length");
  }
  if (!std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
    throw DomainError("radial_table: radii must be strictly increasing");
  }
  return ExteriorData(RadialTable{std::move(radii), std::move(values)}, true);
}

double ExteriorData::operator()(const Point& x) const {
  return std::visit(Overloaded{[](const Constant& c) { return c.value; },
                               [&](const Green& g) { return std::pow(distance(x, g.pole), g.exponent); },
                               [&](const Gaussian& g) { return std::exp(-(x - g.center).norm_sq()); },
                               [&](const HalfSpaceIndicator& h) { return dot(h.normal, x) < h.offset ? 1.0 : 0.0; },
                               [&](const RadialTable& t) {
                                 const double r = x.norm();
                                 if (r <= t.radii.front()) return t.values.front();
                                 if (r >= t.radii.back()) return t.values.back();
                                 const auto hi = std::upper_bound(t.radii.begin(), t.radii.end(), r);
                                 const auto k = static_cast<std::size_t>(hi - t.radii.begin());
                                 const double w = (r - t.radii[k - 1]) / (t.radii[k] - t.radii[k - 1]);
                                 return (1.0 - w) * t.values[k - 1] + w * t.values[k];
                               }},
                    kind_);
}

std::string ExteriorData::name() const {
  return std::visit(Overloaded{[](const Constant&) { return std::string("constant"); },
                               [](const Green&) { return std::string("green"); },
                               [](const Gaussian&) { return std::string("gaussian"); },
                               [](const HalfSpaceIndicator&) { return std::string("halfspace_indicator"); },
                               [](const RadialTable&) { return std::string("radial_table"); }},
                    kind_);
}

SourceTerm SourceTerm::constant(double value) { return SourceTerm(Constant{value}); }

SourceTerm SourceTerm::dyda(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("dyda: alpha must lie in (0, 2)");
  using specfun::log_gamma;
  const double scale = std::exp(alpha * std::log(2.0) + log_gamma(2.0 + alpha / 2.0) + log_gamma(1.0 + alpha / 2.0));
  return SourceTerm(Dyda{alpha, scale});
}

double SourceTerm::operator()(const Point& x) const {
  return std::visit(Overloaded{[](const Constant& c) { return c.value; },
                               [&](const Dyda& d) { return d.scale * (1.0 - (1.0 + d.alpha / 2.0) * x.norm_sq()); }},
                    kind_);
}

std::string SourceTerm::name() const {
  return std::visit(Overloaded{[](const Constant&) { return std::string("constant"); },
                               [](const Dyda&) { return std::string("dyda"); }},
                    kind_);
}

void ProblemSpec::validate() const {
  if (domain.dim() != params.dim()) throw DomainError("problem: domain and stable parameters disagree on dimension");
  if (f && params.dim() != 2) throw DomainError("problem: source terms are supported in d = 2 only");
  if (eps_skin < 0.0) throw DomainError("problem: eps_skin must be nonnegative");
  if (n_inner == 0) throw DomainError("problem: n_inner must be positive");
  if (step_cap == 0) throw DomainError("problem: step_cap must be positive");
  if (tol && !(*tol > 0.0)) throw DomainError("problem: tol must be positive");
  for (const auto& x : eval_points) {
    if (x.dim() != domain.dim()) throw DomainError("problem: evaluation point dimension does not match domain");
    if (!domain.contains(x)) throw DomainError("problem: evaluation point lies outside the domain");
  }
}

}  // namespace fracwos
