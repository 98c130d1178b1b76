#pragma once

#include <stdexcept>
#include <string>

namespace arithfrac {

/// Invalid arguments or malformed input data. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured work budget. Exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A polynomial endomorphism has all components vanishing at a point.
class IndeterminacyError : public std::domain_error {
 public:
  IndeterminacyError(const std::string& what, std::string point)
      : std::domain_error(what), point_(std::move(point)) {}
  const std::string& point() const noexcept { return point_; }

 private:
  std::string point_;
};

}  // namespace arithfrac
