#include "mmrec/errors.hpp"

namespace mmrec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::MalformedSrt: return "MalformedSrt";
    case ErrorCode::UnsupportedWavFormat: return "UnsupportedWavFormat";
    case ErrorCode::EmptyAudio: return "EmptyAudio";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::InvalidHyperparameters: return "InvalidHyperparameters";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::InsufficientFrames: return "InsufficientFrames";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::NoMetadata: return "NoMetadata";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingModality: return "MissingModality";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownModalityWeight: return "UnknownModalityWeight";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidM: return "InvalidM";
    case ErrorCode::NoEvaluableQueries: return "NoEvaluableQueries";
    case ErrorCode::NoModels: return "NoModels";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::MalformedArtifact: return "MalformedArtifact";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace mmrec
