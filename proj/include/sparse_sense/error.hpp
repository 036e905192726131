#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparse_sense {

/// Invalid argument value (probability out of range, t > n, k > N, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A column is identically zero and cannot be scaled to unit norm.
class DegenerateColumnError : public std::runtime_error {
 public:
  explicit DegenerateColumnError(std::size_t column)
      : std::runtime_error("column " + std::to_string(column) +
                           " is entirely zero after masking"),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Ratio with a zero denominator (relative density of an all-zero base).
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration would exceed the configured guard.
class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sparse_sense
