#ifndef RPNORM_ERRORS_HPP_
#define RPNORM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rpnorm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown names, malformed config files, bad flag values.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Input data that violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A normalization would divide by a zero (or negative) variance.
class DegenerateStatisticError : public Error {
 public:
  using Error::Error;
};

/// Work budget exceeded (e.g. enumeration outcome count).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rpnorm

#endif  // RPNORM_ERRORS_HPP_
