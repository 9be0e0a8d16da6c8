#pragma once

#include <stdexcept>
#include <string>

namespace cohere {

// Input rejected by a validation check. `violation` carries the measured
// magnitude of the broken invariant (0 when not applicable).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, double violation = 0.0)
      : std::invalid_argument(what), violation_(violation) {}

  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

class NotHermitianError : public ValidationError {
 public:
  explicit NotHermitianError(double max_asymmetry);
  double max_asymmetry() const noexcept { return violation(); }
};

class DimensionError : public ValidationError {
 public:
  DimensionError(const std::string& what) : ValidationError(what) {}
};

}  // namespace cohere
