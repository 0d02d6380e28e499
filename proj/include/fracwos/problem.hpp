#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracwos/geometry.hpp"
#include "fracwos/point.hpp"
#include "fracwos/stable.hpp"

namespace fracwos {

/// Exterior data g on the complement of the domain, from a builtin closed form
/// or a radial table.
class ExteriorData {
 public:
  struct Constant {
    double value;
  };
  /// |x - pole|^{α-d}, the free-space Green's function with unit constant.
  struct Green {
    Point pole;
    double exponent;
  };
  /// exp(-|x - center|²).
  struct Gaussian {
    Point center;
  };
  /// 1 when normal . x < offset, else 0.
  struct HalfSpaceIndicator {
    Point normal;
    double offset;
  };
  /// Piecewise-linear in |x|, constant beyond the table ends.
  struct RadialTable {
    std::vector<double> radii;
    std::vector<double> values;
  };
  using Kind = std::variant<Constant, Green, Gaussian, HalfSpaceIndicator, RadialTable>;

  static ExteriorData constant(double value);
  static ExteriorData green(const Point& pole, const StableParams& params);
  static ExteriorData gaussian(const Point& center);
  static ExteriorData halfspace_indicator(const Point& normal, double offset);
  static ExteriorData radial_table(std::vector<double> radii, std::vector<double> values);

  double operator()(const Point& x) const;

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  /// Whether ∫ g²/(1+|x|^{α+d}) is known finite (finite estimator variance).
  /// nullopt when nothing is known.
  std::optional<bool> square_integrable() const noexcept { return square_integrable_; }
  ExteriorData& flag_square_integrable(bool value) noexcept {
    square_integrable_ = value;
    return *this;
  }

 private:
  explicit ExteriorData(Kind kind, std::optional<bool> sq = std::nullopt) : kind_(std::move(kind)), square_integrable_(sq) {}

  Kind kind_;
  std::optional<bool> square_integrable_;
};

/// Source term f inside the domain.
class SourceTerm {
 public:
  struct Constant {
    double value;
  };
  /// 2^α Γ(2+α/2) Γ(1+α/2) (1 - (1+α/2)|x|²); exact solution (1-|x|²)_+^{1+α/2}.
  struct Dyda {
    double alpha;
    double scale;
  };
  using Kind = std::variant<Constant, Dyda>;

  static SourceTerm constant(double value);
  static SourceTerm dyda(double alpha);

  double operator()(const Point& x) const;

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

 private:
  explicit SourceTerm(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

/// Fractional Poisson problem (-Δ)^{α/2} u = f in D, u = g on D^c, plus the
/// sampling plan used to estimate u at eval_points.
struct ProblemSpec {
  Domain domain;
  StableParams params;
  ExteriorData g;
  std::optional<SourceTerm> f;
  std::vector<Point> eval_points;
  std::optional<double> tol;  ///< adaptive target standard error; fixed n_samples when unset
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double eps_skin = 0.0;
  std::size_t n_inner = 1000;
  std::uint64_t step_cap = 1'000'000;

  /// Throws DomainError on inconsistent dimensions, exterior evaluation
  /// points, or a source term outside d = 2.
  void validate() const;
};

}  // namespace fracwos
