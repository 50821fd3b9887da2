#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document text. `position` is a byte offset into the input when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at byte " + std::to_string(position) + ")"), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a model invariant (normalization, ranges, duplicates, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A query that names a property, context or coordinate that does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the configured exhaustive bound.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what, std::size_t size, std::size_t limit)
      : Error(what), size_(size), limit_(limit) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

/// Vectors or tables whose shape does not match the object they are checked against.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbd
