#pragma once

#include <stdexcept>
#include <string>

namespace ftdecomp {

enum class ErrorCode {
  UnknownFeature,
  StaleWeight,
  Parse,
  Validation,
  Duplicate,
  NotFound,
  InvalidState,
  Unauthorized,
  Mismatch,
  Io,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library. `subject()` carries the offending
/// identifier (feature name, record id, ...) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string subject = {})
      : std::runtime_error(std::move(message)), code_(code), subject_(std::move(subject)) {}

  ErrorCode code() const { return code_; }
  const std::string& subject() const { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

/// An Error that also records the pipeline stage it surfaced from.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "[" + stage + "] " + cause.what(), cause.subject()), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace ftdecomp
