#pragma once

#include <stdexcept>
#include <string>

namespace abelfft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGroup : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

class SideMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling ran out of retries.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or record.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace abelfft
