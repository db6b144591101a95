#pragma once

#include <stdexcept>
#include <string>

namespace vfk {

// Base for every domain failure raised by the library. A language
// non-membership verdict is never reported through an exception.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace vfk
