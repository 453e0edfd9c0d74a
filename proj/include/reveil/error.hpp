#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reveil {

enum class Errc {
  InvalidArgument,
  // imaging
  BadMagic,
  UnsupportedFormat,
  Truncated,
  DimensionMismatch,
  RectOutOfBounds,
  // stego
  InvalidHeader,
  CarrierTooNarrow,
  RoiTouchesHeaderRow,
  NotStego,
  UnsupportedVersion,
  CrcMismatch,
  MalformedRoi,
  // skeleton
  SyntaxError,
  MissingJoint,
  DuplicateJoint,
  UnknownJointName,
  BadNumber,
  BehindCamera,
  NoTrackedJoints,
  ZeroVector,
  DegenerateBone,
  // pipeline
  FrameTooNarrow,
  MissingPoseFile,
  NonContiguousFrames,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure in the library is reported as an Error carrying a machine
// readable code; what() holds the human readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace reveil
