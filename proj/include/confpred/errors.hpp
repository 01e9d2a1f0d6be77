#pragma once

#include <stdexcept>
#include <string>

namespace confpred {

/// Malformed input: bad CSV, invalid configuration, out-of-range parameters.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: rank-deficient systems, non-convergent solvers.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace confpred
