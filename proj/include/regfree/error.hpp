#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regfree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Violated precondition: letter out of range, R not contained in L, ...
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured size limit was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A value is outside the domain where an exact formula is valid (e.g. a pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace regfree
