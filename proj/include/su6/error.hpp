#pragma once

#include <stdexcept>
#include <string>

namespace su6 {

/// Raised when an input violates an operation's precondition
/// (non-Hermitian generator, non-unitary operator, out-of-family state, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a meaningful result
/// (e.g. a fully destructive recombination at the combiner).
class ComputationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace su6
