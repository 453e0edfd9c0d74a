#include "reveil/error.hpp"

namespace reveil {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::Truncated: return "Truncated";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RectOutOfBounds: return "RectOutOfBounds";
    case Errc::InvalidHeader: return "InvalidHeader";
    case Errc::CarrierTooNarrow: return "CarrierTooNarrow";
    case Errc::RoiTouchesHeaderRow: return "RoiTouchesHeaderRow";
    case Errc::NotStego: return "NotStego";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::CrcMismatch: return "CrcMismatch";
    case Errc::MalformedRoi: return "MalformedRoi";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::MissingJoint: return "MissingJoint";
    case Errc::DuplicateJoint: return "DuplicateJoint";
    case Errc::UnknownJointName: return "UnknownJointName";
    case Errc::BadNumber: return "BadNumber";
    case Errc::BehindCamera: return "BehindCamera";
    case Errc::NoTrackedJoints: return "NoTrackedJoints";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::DegenerateBone: return "DegenerateBone";
    case Errc::FrameTooNarrow: return "FrameTooNarrow";
    case Errc::MissingPoseFile: return "MissingPoseFile";
    case Errc::NonContiguousFrames: return "NonContiguousFrames";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace reveil
