#pragma once

#include <stdexcept>
#include <string>

namespace gausslab {

// A precondition on the arguments was violated (even modulus, r out of band, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size or runtime guard was exceeded (x beyond the supported scale, n past the table).
class GuardError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Numerical integration did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; always an implementation bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gausslab
