#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redukt {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (formula or net file). Carries a position:
/// a character offset for formulas, a line number for net files.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Two operands live over different alphabets.
class AlphabetMismatchError : public Error {
public:
  using Error::Error;
};

/// A word constructor was given an ill-formed lasso (empty cycle,
/// letter out of range).
class InvalidWordError : public Error {
public:
  using Error::Error;
};

/// A configured cap (state limit, edge cap, ...) was exceeded. Checkers
/// surface this as an UNKNOWN verdict rather than a crash.
class ResourceLimitError : public Error {
public:
  using Error::Error;
};

/// Cooperative cancellation (portfolio arm lost the race, or a deadline
/// expired).
class CancelledError : public Error {
public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug, never an input
/// problem: e.g. the two dual sensitivity tests disagree.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace redukt
