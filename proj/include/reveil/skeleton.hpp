#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "reveil/image.hpp"

namespace reveil::skeleton {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// The 20 tracked joints, in canonical order. HipCenter is the root.
enum class JointId : int {
  HipCenter,
  Spine,
  ShoulderCenter,
  Head,
  ShoulderLeft,
  ElbowLeft,
  WristLeft,
  HandLeft,
  ShoulderRight,
  ElbowRight,
  WristRight,
  HandRight,
  HipLeft,
  KneeLeft,
  AnkleLeft,
  FootLeft,
  HipRight,
  KneeRight,
  AnkleRight,
  FootRight,
};

inline constexpr int kJointCount = 20;
/// Every non-root joint is the child end of exactly one bone.
inline constexpr int kBoneCount = kJointCount - 1;

constexpr int index(JointId j) noexcept { return static_cast<int>(j); }
constexpr JointId joint_at(int i) noexcept { return static_cast<JointId>(i); }

std::string_view name(JointId j) noexcept;
std::optional<JointId> joint_from_name(std::string_view s) noexcept;

/// Parent in the hierarchy; nullopt for HipCenter.
std::optional<JointId> parent(JointId j) noexcept;

/// Bones are indexed by child joint: bone b joins parent(child) -> child with
/// child = joint_at(b + 1).
constexpr JointId bone_child(int bone) noexcept { return joint_at(bone + 1); }
JointId bone_parent(int bone) noexcept;
/// Bone whose child end is j; nullopt for the root.
constexpr std::optional<int> bone_ending_at(JointId j) noexcept {
  if (j == JointId::HipCenter) return std::nullopt;
  return index(j) - 1;
}

/// Left/right counterpart (identity on the center line).
JointId mirror(JointId j) noexcept;

enum class TrackingState { Tracked, Inferred, NotTracked };

std::string_view name(TrackingState s) noexcept;
std::optional<TrackingState> state_from_name(std::string_view s) noexcept;

struct Joint {
  Vec3 position = Vec3::Zero();  // meters; x right, y up, z forward from the camera
  TrackingState state = TrackingState::Tracked;
};

struct SkeletonPose {
  std::array<Joint, kJointCount> joints;

  Joint& operator[](JointId j) noexcept { return joints[static_cast<std::size_t>(index(j))]; }
  const Joint& operator[](JointId j) const noexcept {
    return joints[static_cast<std::size_t>(index(j))];
  }
};

struct CameraIntrinsics {
  double fx = 525.0;
  double fy = 525.0;
  double cx = 319.5;
  double cy = 239.5;

  /// Throws Errc::InvalidArgument unless fx > 0 and fy > 0.
  void validate() const;

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

/// Pinhole image-plane position of one joint. Pixel i covers [i - 0.5, i + 0.5).
struct ProjectedJoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
  TrackingState state = TrackingState::Tracked;
};

using ProjectedPose = std::array<ProjectedJoint, kJointCount>;

/// u = cx + fx*x/z, v = cy - fy*y/z. Throws Errc::BehindCamera naming the
/// first joint with z <= 0.
ProjectedPose project(const SkeletonPose& pose, const CameraIntrinsics& cam);

/// Integer pixel containing a continuous image-plane coordinate.
int pixel_of(double coord) noexcept;

/// Smallest rect holding every tracked/inferred joint pixel, grown by
/// padding on each side, clamped to the image and to y >= 1 (row 0 carries
/// the stego header).
Rect bounding_rect(const ProjectedPose& joints, int padding, int width, int height);

/// Rigid map from bind space to camera space for one bone: q -> R*q + t.
struct BoneTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& q) const { return rotation * q + translation; }
};

using BoneTransforms = std::array<BoneTransform, kBoneCount>;

/// Shortest-arc rotation taking bind_dir onto current_dir. Antiparallel
/// inputs turn 180 degrees about the coordinate axis least aligned with
/// bind_dir, orthogonalized against it. Throws Errc::ZeroVector.
Mat3 bone_orientation(const Vec3& bind_dir, const Vec3& current_dir);

/// Per-bone transform carrying the bind parent onto the current parent and
/// the bind bone direction onto the current one (no twist, unit scale). A
/// zero-length current bone keeps the identity rotation. Throws
/// Errc::DegenerateBone for zero-length bind bones.
BoneTransforms bone_transforms(const SkeletonPose& pose, const SkeletonPose& bind);

/// Fixed A-pose the avatar is rigged in; root at the origin, facing the camera.
const SkeletonPose& bind_pose();

struct GaitParams {
  double x0 = -0.2;
  double y0 = 0.0;
  double z0 = 2.5;
  double speed = 0.02;         // meters per frame along +x
  double period = 40.0;        // frames
  double amplitude_deg = 30.0;
};

/// Deterministic closed-form walk cycle. Shoulders and hips swing by
/// amplitude*sin(phase); elbows and knees flex by amplitude*(1 + sin(phase)).
/// Left and right sides run half a period apart; each arm is opposed to the
/// leg on its own side.
SkeletonPose synth_pose(double t, const GaitParams& gait = {});

}  // namespace reveil::skeleton
