#pragma once

#include <stdexcept>
#include <string>

namespace isingff {

// Root of every error raised by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the supported domain (non-ferromagnetic couplings,
// modulus out of range, point on a branch cut, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The argument is within tolerance of a pole of an elliptic function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed structured input: invalid Fock state, non-antisymmetric matrix,
// unbalanced point configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A request would exceed a hard size limit (Hilbert space dimension, ...).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// The transfer-matrix oracle could not attach a unique quasiparticle label
// to an eigenvector.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

}  // namespace isingff
