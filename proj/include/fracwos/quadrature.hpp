#pragma once

// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature (QUADPACK
// QAG strategy): keep bisecting the subinterval with the largest error
// estimate until the summed estimate meets the tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "fracwos/errors.hpp"

namespace fracwos::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const noexcept { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::fabs((kronrod - gauss) * half);
  return {a, b, value, error};
}

}  // namespace detail

/// Integrate f over the finite interval [a, b]. Never evaluates f at the
/// endpoints, so integrable endpoint singularities are allowed.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gk15(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  std::size_t intervals = 1;

  auto done = [&] { return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };

  while (!done() && intervals < opt.max_intervals) {
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at rounding resolution
    heap.pop();
    const detail::Segment left = detail::gk15(f, worst.a, mid);
    const detail::Segment right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = sign * total;
  out.abs_error = total_err;
  out.evaluations = 15 * (2 * intervals - 1);
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
  return out;
}

/// As integrate(), throwing ToleranceNotReached when the budget runs out.
template <class F>
double integrate_or_throw(F&& f, double a, double b, const QuadOptions& opt = {}) {
  const QuadResult r = integrate(std::forward<F>(f), a, b, opt);
  if (!r.converged) {
    throw ToleranceNotReached("adaptive quadrature did not reach tolerance", r.value, r.abs_error);
  }
  return r.value;
}

}  // namespace fracwos::quad
