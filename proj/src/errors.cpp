#include "sct/errors.hpp"

namespace sct {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySource: return "EmptySource";
    case Errc::ParseFailed: return "ParseFailed";
    case Errc::RowOutOfRange: return "RowOutOfRange";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
    case Errc::CacheMiss: return "CacheMiss";
    case Errc::MalformedResponse: return "MalformedResponse";
    case Errc::UnterminatedCommentBlock: return "UnterminatedCommentBlock";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::MissingField: return "MissingField";
    case Errc::TooFewRecords: return "TooFewRecords";
    case Errc::IdMismatch: return "IdMismatch";
    case Errc::NonBinaryPrediction: return "NonBinaryPrediction";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace sct
