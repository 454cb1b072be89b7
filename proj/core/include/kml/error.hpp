#pragma once

#include <stdexcept>
#include <string>

namespace kml {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input to an operation (bad matrix, non-prime p, malformed request).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis does not hold for the requested construction.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A finite group outgrew the configured order cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of nodes before finding what it was looking for.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Something that cannot happen if the mathematics is implemented correctly.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Config file could not be read or parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace kml
