#pragma once

#include <stdexcept>
#include <string>

namespace proofselect {

// Domain error categories surfaced by library operations.
enum class ErrorCode {
  InvalidArgument,
  MissingBinding,
  UnknownTemplate,
  InvalidBracket,
  InvalidConfig,
  KeyMismatch,
  UnlabeledProofs,
  NoPositivePredictions,
  NoExtractableAnswer,
  AllSamplesUnparseable,
  AllSurvivorsUnscored,
  DecompositionFailed,
  GenerationIncomplete,
  Timeout,
  RateLimited,
  EndpointError,
  BudgetExceeded,
  IoError,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace proofselect
