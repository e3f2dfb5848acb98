#pragma once

#include <stdexcept>
#include <string>

namespace qws {

// Bad input: parameter domain, parse errors, malformed graphs, size mismatches.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but the construction does not apply to it
// (no integer spectrum, unequal level weights for the marked vertex).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical solver failed or an internal consistency check tripped.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qws
