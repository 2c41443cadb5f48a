#pragma once

#include <stdexcept>
#include <string>

namespace sct {

enum class Errc {
  EmptySource,
  ParseFailed,
  RowOutOfRange,
  UnknownNode,
  ProviderUnavailable,
  CacheMiss,
  MalformedResponse,
  UnterminatedCommentBlock,
  EmptyInput,
  DimensionMismatch,
  MalformedLine,
  MissingField,
  TooFewRecords,
  IdMismatch,
  NonBinaryPrediction,
  IoError,
};

const char* errc_name(Errc code);

class SctError : public std::runtime_error {
 public:
  SctError(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw SctError(code, message);
}

}  // namespace sct
