#pragma once

#include <stdexcept>
#include <string>

namespace qtree {

/// A well-posed computation that could not be completed: depth caps,
/// branch-following failures, unrepresentable (irrational) data.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtree
