#pragma once

// Gamma/beta special functions used by the exit-law and occupation samplers.
// Everything here is a pure function of its arguments.

namespace fracwos::specfun {

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln B(z, w) for z, w > 0.
double log_beta(double z, double w);

/// B(z, w) for z, w > 0.
double beta(double z, double w);

/// Shape pair (z, w) of the beta function, with ln B(z, w) cached.
class BetaParams {
 public:
  BetaParams(double z, double w);

  double z() const noexcept { return z_; }
  double w() const noexcept { return w_; }
  double log_beta() const noexcept { return log_beta_; }

  /// (w, z): the shapes of the reflected variable 1 - X.
  BetaParams swapped() const noexcept;

 private:
  BetaParams(double z, double w, double log_beta) noexcept : z_(z), w_(w), log_beta_(log_beta) {}

  double z_;
  double w_;
  double log_beta_;
};

/// Regularized incomplete beta I(x; z, w), x in [0, 1].
double reg_inc_beta(double x, const BetaParams& p);

/// Upper tail 1 - I(x; z, w), computed without cancellation.
double reg_inc_beta_upper(double x, const BetaParams& p);

/// Beta(z, w) density x^{z-1} (1-x)^{w-1} / B(z, w) on (0, 1).
double beta_density(double x, const BetaParams& p);

/// Solution x of I(x; z, w) = q, together with 1 - x carried at full
/// relative precision (matters when x is within rounding of 1).
struct BetaQuantile {
  double x;
  double one_minus_x;
};

/// Inverse of reg_inc_beta in x, q in [0, 1].
double inv_reg_inc_beta(double q, const BetaParams& p);

/// As inv_reg_inc_beta, also returning 1 - x accurately.
BetaQuantile inv_reg_inc_beta_pair(double q, const BetaParams& p);

}  // namespace fracwos::specfun
