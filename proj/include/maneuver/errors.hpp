#pragma once

#include <stdexcept>
#include <string>

namespace maneuver {

// Thrown when the constrained fit cannot be solved reliably. Carries the
// condition estimate of the system that failed.
class SingularFitError : public std::runtime_error {
 public:
  SingularFitError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// Closed-loop state left the sane range during integration.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// Gain design found no D-stable point anywhere on the search grid.
class NoAdmissibleGainsError : public std::runtime_error {
 public:
  NoAdmissibleGainsError(const std::string& what, double speed)
      : std::runtime_error(what), speed_(speed) {}
  double speed() const { return speed_; }

 private:
  double speed_;
};

}  // namespace maneuver
