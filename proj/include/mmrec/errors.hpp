#pragma once

#include <stdexcept>
#include <string>

namespace mmrec {

enum class ErrorCode {
  // corpus
  MissingFile,
  MalformedManifest,
  DuplicateId,
  InvalidEncoding,
  MalformedSrt,
  UnsupportedWavFormat,
  EmptyAudio,
  // textvec
  EmptyCorpus,
  EmptyVocabulary,
  InvalidHyperparameters,
  UnknownDocument,
  // audiovec
  InsufficientFrames,
  TooFewFrames,
  // metavec
  EmptyPath,
  EmptySegment,
  NoMetadata,
  UnknownNode,
  // fusion
  DimensionMismatch,
  MissingModality,
  ShapeMismatch,
  UnknownModalityWeight,
  AllZeroWeights,
  IndexOutOfRange,
  // eval
  InvalidM,
  NoEvaluableQueries,
  NoModels,
  EmptyGrid,
  // artifacts / cli
  MalformedArtifact,
  UsageError,
  Internal,
};

const char* error_code_name(ErrorCode code);

// All recoverable failures surface as Error; tests match on code(),
// the CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mmrec
