#pragma once

#include <stdexcept>
#include <string>

namespace fracgreen {

/// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series could not be summed to the requested tolerance in working precision.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

/// Estimated discretisation error exceeds the caller's tolerance.
class AccuracyWarning : public Error {
 public:
  using Error::Error;
};

class MissingData : public Error {
 public:
  using Error::Error;
};

/// The tau-integral of the fundamental solution could not be truncated within the
/// tabulated range of the Wright kernel.
class TruncationFailure : public Error {
 public:
  using Error::Error;
};

/// Image series of the Green function did not settle before m_max shells.
class NonConverged : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(std::string term, const std::string& what)
      : Error("[" + term + "] " + what), term_(std::move(term)) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

class CompatibilityError : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace fracgreen
