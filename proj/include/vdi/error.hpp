#pragma once

#include <stdexcept>
#include <string>

namespace vdi {

enum class ErrorCode {
  kParse,
  kCycle,
  kUnknownLink,
  kUnsupported,
  kTruncated,
  kInvalidArgument,
  kMissingJoint,
  kMissingPose,
  kBehindCamera,
  kInvalidDepth,
  kOutOfBounds,
  kDimensionMismatch,
  kFrameCountMismatch,
  kIo,
};

const char* to_string(ErrorCode code);

// Single exception type for the library. The code tells callers (and the
// CLI exit-status mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vdi
