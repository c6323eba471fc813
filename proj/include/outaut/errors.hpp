#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace outaut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// A configured bound (prime size, search height, iteration budget) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Raised when an internal self-check fails; never expected on valid inputs.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace outaut
