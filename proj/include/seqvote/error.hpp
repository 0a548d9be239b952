#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqvote {

enum class ErrorCode {
  EmptyInstance,
  EmptyRound,
  BadIndex,
  LengthMismatch,
  DuplicateLabel,
  EmptyGroup,
  SearchBudgetExceeded,
  TooManyVoters,
  BadSpec,
  BadConfig,
  GuardExceeded,
  ConstructionFailed,
  KTooLarge,
  ParseError,
  UnknownName,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception; `code()` identifies the failure class, `what()` the location.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace seqvote
