#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpi {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (see tools/gpi_main.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedElement : public Error {
 public:
  using Error::Error;
};

class DegreeConflict : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class GradedSubstitutionError : public Error {
 public:
  using Error::Error;
};

class GradedEvaluationError : public Error {
 public:
  using Error::Error;
};

class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a computation would exceed the configured resource limits.
class GuardExceeded : public Error {
 public:
  GuardExceeded(const std::string& what, std::size_t estimate)
      : Error(what), estimate_(estimate) {}
  std::size_t estimate() const { return estimate_; }

 private:
  std::size_t estimate_;
};

// Two routes that theory says must agree did not. Always a bug or an
// unstabilized truncation.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace gpi
