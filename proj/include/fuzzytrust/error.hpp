#pragma once

#include <stdexcept>
#include <string>

namespace fuzzytrust {

enum class ErrorCode {
  InvalidArgument = 1,
  Configuration = 2,
  NonConvergence = 3,
  Undefined = 4,
  Io = 5,
};

// All library failures derive from this; the C layer maps code() onto its enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Configuration, what) {}
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, std::size_t iterations)
      : Error(ErrorCode::NonConvergence, what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

// Raised when a quantity has no defined value (empty envelope, empty locality map).
class UndefinedValue : public Error {
 public:
  explicit UndefinedValue(const std::string& what) : Error(ErrorCode::Undefined, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace fuzzytrust
