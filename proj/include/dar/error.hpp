#pragma once

#include <stdexcept>
#include <string>

namespace dar {

/// Failure categories surfaced by the library. The CLI maps them to exit codes.
enum class ErrorKind {
  Overflow,
  NonConvergence,
  LengthMismatch,
  DegenerateSeries,
  SingularTerm,
  EmptySet,
  NoRoot,
  SingularSigma,
  Precondition,
  Parse,
  Config,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dar
