#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpbvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Mathematical domain violation during expression evaluation
/// (division by zero, log of a non-positive number, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Invalid problem description (bad config document, inconsistent
/// dimensions, boundary point off the boundary, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Covariance factorization failed even at the maximum jitter level.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double final_jitter)
      : Error(what + " (final jitter tried: " + std::to_string(final_jitter) + ")"),
        final_jitter_(final_jitter) {}
  double final_jitter() const { return final_jitter_; }

 private:
  double final_jitter_;
};

/// Numerical breakdown detected after a successful factorization
/// (e.g. a posterior variance far below zero).
class NumericalBreakdownError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpbvp
