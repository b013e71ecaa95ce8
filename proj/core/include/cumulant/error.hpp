#pragma once

#include <stdexcept>
#include <string>

namespace cumulant {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested order or problem size exceeds a documented bound.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data or invalid model parameters.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// An evaluation point lies outside the truncated support.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A denominator or tail probability is too close to zero to divide by.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Text input (files, distribution specs) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cumulant
