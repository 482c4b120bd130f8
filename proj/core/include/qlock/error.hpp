#pragma once

#include <stdexcept>
#include <string>

namespace qlock {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of operands do not fit together ("bad factorization", POVM vs state).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value violates a type invariant (non-Hermitian, not normalized, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A request exceeds the supported problem size or parameter range.
class LimitError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON documents, builtin names).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlock
