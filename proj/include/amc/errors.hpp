#pragma once

#include <stdexcept>
#include <string>

namespace amc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed parameters, e.g. a power family whose blocks eventually overlap.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for the given tier (e.g. symbolic sumset of an oracle set).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A documented size limit was hit (residue table, finite part, window, subset search).
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Document or literal could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace amc
