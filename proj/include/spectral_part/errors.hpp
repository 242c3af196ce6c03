#pragma once

#include <stdexcept>
#include <string>

namespace spectral_part {

enum class ErrorKind { input, numeric, capacity, gap };

const char* to_string(ErrorKind kind);

/// Base of every library error. The kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error(ErrorKind::input, message) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& message) : Error(ErrorKind::numeric, message) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& message) : Error(ErrorKind::capacity, message) {}
};

/// Raised when lambda_k >= lambda_{k+1} where a strict gap is required.
class GapError : public Error {
 public:
  explicit GapError(const std::string& message) : Error(ErrorKind::gap, message) {}
};

/// The coefficient matrix F is (numerically) singular.
class SpanCollapseError : public NumericError {
 public:
  explicit SpanCollapseError(const std::string& message) : NumericError(message) {}
};

/// Fewer than k distinct points were given to a k-means routine.
class DegenerateError : public NumericError {
 public:
  explicit DegenerateError(const std::string& message) : NumericError(message) {}
};

}  // namespace spectral_part
