#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heis {

enum class ErrorCode {
  kOverflow,
  kDomain,
  kDimensionMismatch,
  kPrecision,
  kNonzeroMean,
  kResonance,
  kParse,
  kDegenerateInput,
};

/// Stable machine-readable name, used by the CLI error stream.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(ErrorCode::kOverflow, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kDomain, what) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what)
      : Error(ErrorCode::kDimensionMismatch, what) {}
};

/// Raised when a computation cannot be resolved at the configured precision.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(ErrorCode::kPrecision, what) {}
};

class NonzeroMeanError : public Error {
 public:
  explicit NonzeroMeanError(const std::string& what) : Error(ErrorCode::kNonzeroMean, what) {}
};

/// Lists every resonant frequency that blocks a solve.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, std::vector<std::vector<std::int64_t>> modes)
      : Error(ErrorCode::kResonance, what), modes_(std::move(modes)) {}
  const std::vector<std::vector<std::int64_t>>& modes() const noexcept { return modes_; }

 private:
  std::vector<std::vector<std::int64_t>> modes_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : Error(ErrorCode::kDegenerateInput, what) {}
};

}  // namespace heis
