#pragma once

#include <stdexcept>

namespace polarpunct {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside its documented domain (index, stage count, length).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input (pattern strings, family files).
class FormatError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A rate ladder cannot be realised for the given information set.
class InfeasibleRate : public Error {
 public:
  using Error::Error;
};

/// A constructed pattern failed its post-construction verification.
class ConstructionViolation : public Error {
 public:
  using Error::Error;
};

/// Channel 0 was found in an information set where it is not allowed.
class ZeroInInfoSet : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A code configuration violates one of its consistency invariants.
class InvalidCode : public Error {
 public:
  using Error::Error;
};

}  // namespace polarpunct
