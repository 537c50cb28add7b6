#pragma once

#include <stdexcept>
#include <string>

namespace monephase {

// Bad input: malformed files, contract violations, domain errors.
// The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class LengthError : public Error {
public:
  using Error::Error;
};

class AlignmentError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

// Singular or degenerate numerics (collinear design, zero-variance data).
class NumericalError : public Error {
public:
  using Error::Error;
};

// Iterative fit failed to converge. Exit code 2.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace monephase
