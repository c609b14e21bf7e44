#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jtx {

// Base for every failure raised by the library. Callers that only need to
// distinguish "bad data" from programming errors can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class CorruptStream : public Error {
 public:
  CorruptStream(const std::string& what, std::size_t bit_offset)
      : Error(what + " at bit " + std::to_string(bit_offset)), reason_(what), bit_offset_(bit_offset) {}

  const std::string& reason() const noexcept { return reason_; }
  std::size_t bit_offset() const noexcept { return bit_offset_; }

 private:
  std::string reason_;
  std::size_t bit_offset_;
};

}  // namespace jtx
