#pragma once

#include <stdexcept>
#include <string>

namespace qdg {

// Malformed or invariant-violating input (bad ids, bad shapes, schema errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called on data that does not satisfy its precondition.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Well-formed input outside what the exact routines can handle
// (e.g. irrational eigenvalues in exact mode).
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdg
