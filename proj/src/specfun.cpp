#include "fracwos/specfun.hpp"

#include <math.h>

#include <cmath>
#include <limits>

#include "fracwos/errors.hpp"

namespace fracwos::specfun {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kCfEps = 1e-16;
constexpr int kCfMaxIter = 2000;
constexpr int kNewtonMaxIter = 100;
constexpr double kResidualTol = 1e-14;

// Modified Lentz evaluation of the incomplete-beta continued fraction,
// convergent for x < (a + 1) / (a + b + 2).
double beta_cf(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfEps) break;
  }
  return h;
}

struct Tails {
  double lower;  // I(x; z, w)
  double upper;  // 1 - I(x; z, w)
};

// Both tails, each computed directly on the side where the continued
// fraction converges and by complement on the other.
Tails tails(double x, const BetaParams& p) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return {0.0, 1.0};
  if (x == 1.0) return {1.0, 0.0};
  const double z = p.z();
  const double w = p.w();
  const double log_front = z * std::log(x) + w * std::log1p(-x) - p.log_beta();
  const double front = std::exp(log_front);
  if (x < (z + 1.0) / (z + w + 2.0)) {
    const double lower = front * beta_cf(x, z, w) / z;
    return {lower, 1.0 - lower};
  }
  const double upper = front * beta_cf(1.0 - x, w, z) / w;
  return {1.0 - upper, upper};
}

// Starting point for the inverse (Numerical Recipes 6.4 style): a normal
// approximation when both shapes are >= 1, otherwise the two power-law tails.
double initial_guess(double q, double a, double b, double log_beta) {
  if (a >= 1.0 && b >= 1.0) {
    const double pp = q < 0.5 ? q : 1.0 - q;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (q < 0.5) x = -x;
    const double al = (x * x - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w = x * std::sqrt(al + h) / h -
                     (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    return a / (a + b * std::exp(2.0 * w));
  }
  const double lna = std::log(a / (a + b));
  const double lnb = std::log(b / (a + b));
  const double t = std::exp(a * lna) / a;
  const double u = std::exp(b * lnb) / b;
  const double s = t + u;
  if (q < t / s) {
    // Small-x asymptote I ~ x^a / (a B); evaluated in logs to survive tiny q.
    const double log_x = (std::log(q) + std::log(a) + log_beta) / a;
    return std::exp(std::min(log_x, std::log(0.5)));
  }
  return 1.0 - std::pow(b * s * (1.0 - q), 1.0 / b);
}

// Solve I(x; p) = q for a root x <= 1/2, returning x at full relative precision.
// Newton on log I against log x, safeguarded by a shrinking bracket.
double solve_lower(double q, const BetaParams& p) {
  constexpr double kMinX = std::numeric_limits<double>::min();
  double lo = 0.0;
  double hi = 1.0;
  double x = initial_guess(q, p.z(), p.w(), p.log_beta());
  if (!(x > 0.0 && x < 1.0)) x = 0.5;
  x = std::max(x, kMinX);
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    const double fx = tails(x, p).lower;
    if (std::fabs(fx - q) <= kResidualTol * q) return x;
    if (fx < q) {
      lo = x;
    } else {
      hi = x;
    }
    if (x <= kMinX && fx > q) return kMinX;  // root below the normal range
    double next;
    const double dens = beta_density(x, p);
    if (fx > 0.0 && dens > 0.0 && std::isfinite(dens)) {
      const double slope = x * dens / fx;  // d log I / d log x
      next = x * std::exp(-(std::log(fx) - std::log(q)) / slope);
    } else {
      next = std::numeric_limits<double>::quiet_NaN();
    }
    if (!(next > lo && next < hi)) {
      if (lo == 0.0) {
        next = hi * 1e-3;
      } else if (hi / lo > 4.0) {
        next = std::sqrt(lo * hi);
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    next = std::max(next, kMinX);
    if (std::fabs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x) return next;
    x = next;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be positive");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_beta(double z, double w) {
  if (!(z > 0.0 && w > 0.0)) throw DomainError("log_beta: shapes must be positive");
  return log_gamma(z) + log_gamma(w) - log_gamma(z + w);
}

double beta(double z, double w) { return std::exp(log_beta(z, w)); }

BetaParams::BetaParams(double z, double w) : z_(z), w_(w), log_beta_(0.0) {
  if (!(z > 0.0 && w > 0.0) || !std::isfinite(z) || !std::isfinite(w)) {
    throw DomainError("BetaParams: shapes must be positive and finite");
  }
  log_beta_ = specfun::log_beta(z, w);
}

BetaParams BetaParams::swapped() const noexcept { return BetaParams(w_, z_, log_beta_); }

double reg_inc_beta(double x, const BetaParams& p) { return tails(x, p).lower; }

double reg_inc_beta_upper(double x, const BetaParams& p) { return tails(x, p).upper; }

double beta_density(double x, const BetaParams& p) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("beta_density: x must lie in (0, 1)");
  return std::exp((p.z() - 1.0) * std::log(x) + (p.w() - 1.0) * std::log1p(-x) - p.log_beta());
}

BetaQuantile inv_reg_inc_beta_pair(double q, const BetaParams& p) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("inv_reg_inc_beta: q must lie in [0, 1]");
  if (q == 0.0) return {0.0, 1.0};
  if (q == 1.0) return {1.0, 0.0};
  // Solve for whichever of x, 1 - x is below 1/2 so it keeps full relative
  // precision; I(x; z, w) = q  <=>  I(1 - x; w, z) = 1 - q.
  if (q <= reg_inc_beta(0.5, p)) {
    const double x = solve_lower(q, p);
    return {x, 1.0 - x};
  }
  const double y = solve_lower(1.0 - q, p.swapped());
  return {1.0 - y, y};
}

double inv_reg_inc_beta(double q, const BetaParams& p) { return inv_reg_inc_beta_pair(q, p).x; }

}  // namespace fracwos::specfun
