#pragma once

#include <stdexcept>
#include <string>

namespace facetbench {

// Bad or inconsistent user data: malformed files, invariant breaches,
// unknown DMU names. The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal failures: solver faults, outcomes the mathematics rules out.
// The CLI maps these to exit code 2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace facetbench
