#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndmm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic produced NaN or infinity.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// I-bounds or k outside their domain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A rating expression failed to parse. position is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ndmm
