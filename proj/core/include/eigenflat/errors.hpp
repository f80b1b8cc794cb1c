#pragma once

#include <stdexcept>
#include <string>

namespace eigenflat {

// Bad input: malformed strings, invalid discriminants, surfaces that fail
// structural validation, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The enumeration node budget ran out before the search completed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold exactly did not.
class CrossCheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eigenflat
