#pragma once

#include <stdexcept>
#include <string>

namespace ciliagraph {

// Process exit codes shared by the library error taxonomy and the CLI.
enum class ExitCode : int {
  ok = 0,
  input_error = 2,      // bad user input: missing files, malformed data, invalid flags
  compat_error = 3,     // incompatible operands: dimension/attribute/shape mismatches
  integrity_error = 4,  // corrupted or unreadable persisted artifacts
  internal_error = 5,   // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error(ExitCode::input_error, message) {}
};

class CompatError : public Error {
 public:
  explicit CompatError(const std::string& message) : Error(ExitCode::compat_error, message) {}
};

// What exactly went wrong while reading a persisted model.
enum class IntegrityKind {
  bad_magic,
  version_mismatch,
  truncated,
  checksum_mismatch,
};

class IntegrityError : public Error {
 public:
  IntegrityError(IntegrityKind kind, const std::string& message)
      : Error(ExitCode::integrity_error, message), kind_(kind) {}

  [[nodiscard]] IntegrityKind kind() const noexcept { return kind_; }

 private:
  IntegrityKind kind_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message) : Error(ExitCode::internal_error, message) {}
};

}  // namespace ciliagraph
