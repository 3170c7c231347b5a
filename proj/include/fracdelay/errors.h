#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracdelay {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not certify its stated accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// LU pivot fell below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup outside the range covered by a history buffer.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Syntax, unknown-identifier or arity failure in a time expression.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kUnknownIdentifier, kArity };

  ParseError(Kind kind, std::size_t offset, std::vector<std::string> expected,
             const std::string& message)
      : std::runtime_error(message),
        kind_(kind),
        offset_(offset),
        expected_(std::move(expected)) {}

  Kind kind() const { return kind_; }
  /// Byte offset into the source text.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Division by zero, log/sqrt of an out-of-domain value, or a non-finite
/// intermediate result while evaluating a time expression.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent system configuration. `key()` names the
/// offending config key when there is one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// The system or its initial data fail a hypothesis required by the
/// requested operation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracdelay
