#pragma once

#include <stdexcept>
#include <string>

namespace corona {

/// Malformed or out-of-contract input: bad JSON, inconsistent dimensions,
/// series degree over the hard cap, infeasible generator budget, ...
/// The CLI maps this to exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// The corona-data condition fails quantitatively: the measured lower bound
/// of the data is (numerically) zero, a symmetrized series vanishes inside
/// the disk, etc. Solving cannot proceed. The CLI maps this to exit code 3.
class CoronaViolation : public std::runtime_error {
 public:
  explicit CoronaViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A requested verification did not meet its tolerance.
/// The CLI maps this to exit code 4.
class ToleranceFailure : public std::runtime_error {
 public:
  explicit ToleranceFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corona
