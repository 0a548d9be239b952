#include "seqvote/error.hpp"

namespace seqvote {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInstance: return "EmptyInstance";
    case ErrorCode::EmptyRound: return "EmptyRound";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::TooManyVoters: return "TooManyVoters";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace seqvote
