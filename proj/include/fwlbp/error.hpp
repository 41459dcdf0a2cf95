#pragma once

#include <stdexcept>
#include <string>

namespace fwlbp {

enum class ErrorCode {
  kParse,
  kTruncated,
  kUnsupportedFormat,
  kConstantImage,
  kDegenerateSize,
  kInvalidParameter,
  kImageTooSmall,
  kInsufficientLayers,
  kBorderViolation,
  kShapeMismatch,
  kDomain,
  kInsufficientSamples,
  kUnknownClass,
  kEmptyModel,
  kIo,
  kExists,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// C layer can map it onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) Fail(code, what);
}

}  // namespace fwlbp
