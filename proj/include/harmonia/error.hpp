#pragma once

#include <stdexcept>
#include <string>

namespace harmonia {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (JSON schema, CSV, flag values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold: dimension mismatch, point
/// outside a domain, inadequate sampling, invalid exponent, ...
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic would overflow its declared range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped at its cap without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A certificate failed self-verification.
class CertificateError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace harmonia
