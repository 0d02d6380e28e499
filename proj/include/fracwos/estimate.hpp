#pragma once

#include <cmath>
#include <cstdint>

namespace fracwos {

/// Streaming mean and unbiased variance (Welford), mergeable with the
/// Chan et al. pairwise update so per-worker partials can be combined.
class Estimate {
 public:
  void add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const Estimate& o) noexcept {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double delta = o.mean_ - mean_;
    mean_ += delta * (nb / n);
    m2_ += o.m2_ + delta * delta * (na * nb / n);
    n_ += o.n_;
  }

  static Estimate merged(Estimate a, const Estimate& b) noexcept {
    a.merge(b);
    return a;
  }

  std::uint64_t n() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double var() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const noexcept { return n_ > 0 ? std::sqrt(var() / static_cast<double>(n_)) : 0.0; }

  /// Rebuild from summary statistics (deserialisation, tests).
  static Estimate from_moments(std::uint64_t n, double mean, double var) noexcept {
    Estimate e;
    e.n_ = n;
    e.mean_ = mean;
    e.m2_ = n > 1 ? var * static_cast<double>(n - 1) : 0.0;
    return e;
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace fracwos
