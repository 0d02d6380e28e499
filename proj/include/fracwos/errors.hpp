#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracwos {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A walk ran past its step cap without terminating.
class StepCapExceeded : public std::runtime_error {
 public:
  StepCapExceeded(const std::string& what, std::uint64_t steps)
      : std::runtime_error(what), steps_(steps) {}

  std::uint64_t steps() const noexcept { return steps_; }

 private:
  std::uint64_t steps_;
};

/// A numerical procedure stopped at its budget before reaching the requested
/// accuracy. `value` and `achieved` hold the partial result and the accuracy it
/// actually reached (error estimate or standard error).
class ToleranceNotReached : public std::runtime_error {
 public:
  ToleranceNotReached(const std::string& what, double value, double achieved)
      : std::runtime_error(what), value_(value), achieved_(achieved) {}

  double value() const noexcept { return value_; }
  double achieved() const noexcept { return achieved_; }

 private:
  double value_;
  double achieved_;
};

}  // namespace fracwos
