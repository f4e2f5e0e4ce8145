#pragma once

#include <stdexcept>
#include <string>

namespace alphamix {

// Base for every error thrown by the library. Callers that only need a
// message can catch this; the CLI maps it to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Templates or grids whose rows/cols disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Wrong number of operands (e.g. a mix of fewer than two templates).
class ArityError : public Error {
 public:
  using Error::Error;
};

// Malformed on-disk data: bad magic, bad header, bad characters.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A parameter outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace alphamix
