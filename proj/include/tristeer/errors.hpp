#pragma once

#include <stdexcept>
#include <string>

namespace tristeer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Coherent-state truncation tail exceeds the allowed bound.
class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

class ZeroProbability : public Error {
 public:
  using Error::Error;
};

class HeraldPatternAmbiguous : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Squared concurrences violate the triangle inequality beyond round-off.
class TriangleViolation : public Error {
 public:
  using Error::Error;
};

class SameQubit : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

}  // namespace tristeer
