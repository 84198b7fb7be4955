#include "vdi/error.hpp"

namespace vdi {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kUnknownLink: return "unknown link";
    case ErrorCode::kUnsupported: return "unsupported feature";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kMissingJoint: return "missing joint";
    case ErrorCode::kMissingPose: return "missing pose";
    case ErrorCode::kBehindCamera: return "behind camera";
    case ErrorCode::kInvalidDepth: return "invalid depth";
    case ErrorCode::kOutOfBounds: return "out of bounds";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kFrameCountMismatch: return "frame count mismatch";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

}  // namespace vdi
