#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hhm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A triple addressed a (row, col) outside the matrix. `position()` is the
/// offset of the offending triple in the input sequence.
class IndexError : public Error {
 public:
  IndexError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range line in an edge-list file (1-based line number).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::uint64_t line)
      : Error(what), line_(line) {}
  std::uint64_t line() const noexcept { return line_; }

 private:
  std::uint64_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhm
