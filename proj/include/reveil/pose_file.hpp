#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "reveil/skeleton.hpp"

// Line-oriented text format, '#' starts a comment line:
//
//   POSE v1
//   camera <fx> <fy> <cx> <cy>
//   joint <Name> <x> <y> <z> <tracked|inferred|nottracked>   (x20, any order)
namespace reveil::skeleton {

struct PoseFile {
  SkeletonPose pose;
  CameraIntrinsics camera;
};

/// Errors: SyntaxError (with line number), MissingJoint, DuplicateJoint,
/// UnknownJointName, BadNumber.
PoseFile parse_pose(std::string_view text);

/// Canonical form: joints in JointId order, six decimals everywhere.
std::string serialize_pose(const SkeletonPose& pose, const CameraIntrinsics& cam);

PoseFile read_pose_file(const std::filesystem::path& path);
void write_pose_file(const std::filesystem::path& path, const SkeletonPose& pose,
                     const CameraIntrinsics& cam);

}  // namespace reveil::skeleton
