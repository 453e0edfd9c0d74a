#include "reveil/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "reveil/error.hpp"

namespace reveil::skeleton {

namespace {

constexpr std::array<std::string_view, kJointCount> kNames = {
    "HipCenter",  "Spine",      "ShoulderCenter", "Head",          "ShoulderLeft",
    "ElbowLeft",  "WristLeft",  "HandLeft",       "ShoulderRight", "ElbowRight",
    "WristRight", "HandRight",  "HipLeft",        "KneeLeft",      "AnkleLeft",
    "FootLeft",   "HipRight",   "KneeRight",      "AnkleRight",    "FootRight",
};

using J = JointId;

constexpr std::array<JointId, kJointCount> kParents = {
    J::HipCenter,  // root, unused
    J::HipCenter,      J::Spine,         J::ShoulderCenter, J::ShoulderCenter,
    J::ShoulderLeft,   J::ElbowLeft,     J::WristLeft,      J::ShoulderCenter,
    J::ShoulderRight,  J::ElbowRight,    J::WristRight,     J::HipCenter,
    J::HipLeft,        J::KneeLeft,      J::AnkleLeft,      J::HipCenter,
    J::HipRight,       J::KneeRight,     J::AnkleRight,
};

constexpr double kMinLength = 1e-9;

SkeletonPose make_bind_pose() {
  SkeletonPose p;
  auto set = [&p](JointId j, double x, double y, double z) {
    p[j] = Joint{Vec3(x, y, z), TrackingState::Tracked};
  };
  set(J::HipCenter, 0.00, 0.00, 0.00);
  set(J::Spine, 0.00, 0.20, 0.00);
  set(J::ShoulderCenter, 0.00, 0.50, 0.00);
  set(J::Head, 0.00, 0.70, 0.00);
  set(J::ShoulderLeft, -0.18, 0.45, 0.00);
  set(J::ElbowLeft, -0.30, 0.20, 0.00);
  set(J::WristLeft, -0.38, -0.03, 0.00);
  set(J::HandLeft, -0.40, -0.10, 0.00);
  set(J::HipLeft, -0.10, -0.05, 0.00);
  set(J::KneeLeft, -0.12, -0.48, 0.00);
  set(J::AnkleLeft, -0.13, -0.90, 0.00);
  set(J::FootLeft, -0.13, -0.95, -0.10);
  for (JointId left : {J::ShoulderLeft, J::ElbowLeft, J::WristLeft, J::HandLeft, J::HipLeft,
                       J::KneeLeft, J::AnkleLeft, J::FootLeft}) {
    const Vec3& q = p[left].position;
    set(mirror(left), -q.x(), q.y(), q.z());
  }
  return p;
}

Mat3 rot_x(double radians) {
  return Eigen::AngleAxisd(radians, Vec3::UnitX()).toRotationMatrix();
}

}  // namespace

std::string_view name(JointId j) noexcept { return kNames[static_cast<std::size_t>(index(j))]; }

std::optional<JointId> joint_from_name(std::string_view s) noexcept {
  for (int i = 0; i < kJointCount; ++i) {
    if (kNames[static_cast<std::size_t>(i)] == s) return joint_at(i);
  }
  return std::nullopt;
}

std::optional<JointId> parent(JointId j) noexcept {
  if (j == J::HipCenter) return std::nullopt;
  return kParents[static_cast<std::size_t>(index(j))];
}

JointId bone_parent(int bone) noexcept {
  return kParents[static_cast<std::size_t>(index(bone_child(bone)))];
}

JointId mirror(JointId j) noexcept {
  const int i = index(j);
  if (i >= index(J::ShoulderLeft) && i <= index(J::HandLeft)) return joint_at(i + 4);
  if (i >= index(J::ShoulderRight) && i <= index(J::HandRight)) return joint_at(i - 4);
  if (i >= index(J::HipLeft) && i <= index(J::FootLeft)) return joint_at(i + 4);
  if (i >= index(J::HipRight) && i <= index(J::FootRight)) return joint_at(i - 4);
  return j;
}

std::string_view name(TrackingState s) noexcept {
  switch (s) {
    case TrackingState::Tracked: return "tracked";
    case TrackingState::Inferred: return "inferred";
    case TrackingState::NotTracked: return "nottracked";
  }
  return "nottracked";
}

std::optional<TrackingState> state_from_name(std::string_view s) noexcept {
  if (s == "tracked") return TrackingState::Tracked;
  if (s == "inferred") return TrackingState::Inferred;
  if (s == "nottracked") return TrackingState::NotTracked;
  return std::nullopt;
}

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy) ||
      !std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(Errc::InvalidArgument, "camera focal lengths must be positive and finite");
  }
}

ProjectedPose project(const SkeletonPose& pose, const CameraIntrinsics& cam) {
  cam.validate();
  ProjectedPose out;
  for (int i = 0; i < kJointCount; ++i) {
    const Joint& j = pose.joints[static_cast<std::size_t>(i)];
    const Vec3& p = j.position;
    if (!(p.z() > 0.0)) {
      throw Error(Errc::BehindCamera, std::string(name(joint_at(i))) + " has z = " +
                                          std::to_string(p.z()));
    }
    out[static_cast<std::size_t>(i)] =
        ProjectedJoint{cam.cx + cam.fx * p.x() / p.z(), cam.cy - cam.fy * p.y() / p.z(), p.z(),
                       j.state};
  }
  return out;
}

int pixel_of(double coord) noexcept {
  const double f = std::floor(coord + 0.5);
  constexpr double lo = std::numeric_limits<int>::min() / 2;
  constexpr double hi = std::numeric_limits<int>::max() / 2;
  return static_cast<int>(std::clamp(f, lo, hi));
}

Rect bounding_rect(const ProjectedPose& joints, int padding, int width, int height) {
  if (padding < 0) throw Error(Errc::InvalidArgument, "padding must be non-negative");
  bool any = false;
  long long x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  for (const ProjectedJoint& j : joints) {
    if (j.state == TrackingState::NotTracked) continue;
    const long long px = pixel_of(j.u);
    const long long py = pixel_of(j.v);
    if (!any) {
      x0 = x1 = px;
      y0 = y1 = py;
      any = true;
    } else {
      x0 = std::min(x0, px);
      x1 = std::max(x1, px);
      y0 = std::min(y0, py);
      y1 = std::max(y1, py);
    }
  }
  if (!any) throw Error(Errc::NoTrackedJoints, "every joint is nottracked");

  x0 = std::max<long long>(x0 - padding, 0);
  y0 = std::max<long long>(y0 - padding, 1);
  x1 = std::min<long long>(x1 + padding, width - 1);
  y1 = std::min<long long>(y1 + padding, height - 1);
  if (x1 < x0 || y1 < y0) {
    throw Error(Errc::RectOutOfBounds, "the tracked joints fall outside the image");
  }
  return Rect{static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1 - x0 + 1),
              static_cast<int>(y1 - y0 + 1)};
}

Mat3 bone_orientation(const Vec3& bind_dir, const Vec3& current_dir) {
  const double na = bind_dir.norm();
  const double nb = current_dir.norm();
  if (!(na > kMinLength) || !(nb > kMinLength)) {
    throw Error(Errc::ZeroVector, "bone direction has zero length");
  }
  const Vec3 a = bind_dir / na;
  const Vec3 b = current_dir / nb;
  const double d = a.dot(b);

  if (1.0 + d <= 1e-12) {
    // Antiparallel: half turn about a fixed perpendicular.
    int axis = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(a[i]) < std::abs(a[axis])) axis = i;
    }
    Vec3 n = Vec3::Unit(axis);
    n = (n - n.dot(a) * a).normalized();
    return 2.0 * n * n.transpose() - Mat3::Identity();
  }
  const Vec3 c = a.cross(b);
  return Eigen::Quaterniond(1.0 + d, c.x(), c.y(), c.z()).normalized().toRotationMatrix();
}

BoneTransforms bone_transforms(const SkeletonPose& pose, const SkeletonPose& bind) {
  BoneTransforms out;
  for (int b = 0; b < kBoneCount; ++b) {
    const JointId c = bone_child(b);
    const JointId p = bone_parent(b);
    const Vec3 bind_dir = bind[c].position - bind[p].position;
    if (!(bind_dir.norm() > kMinLength)) {
      throw Error(Errc::DegenerateBone, "bind bone " + std::string(name(p)) + " -> " +
                                            std::string(name(c)) + " has zero length");
    }
    const Vec3 cur_dir = pose[c].position - pose[p].position;
    BoneTransform& t = out[static_cast<std::size_t>(b)];
    t.rotation = cur_dir.norm() > kMinLength ? bone_orientation(bind_dir, cur_dir)
                                              : Mat3::Identity();
    t.translation = pose[p].position - t.rotation * bind[p].position;
  }
  return out;
}

const SkeletonPose& bind_pose() {
  static const SkeletonPose pose = make_bind_pose();
  return pose;
}

SkeletonPose synth_pose(double t, const GaitParams& gait) {
  const SkeletonPose& bind = bind_pose();
  const double omega = 2.0 * std::numbers::pi / gait.period;
  const double amp = gait.amplitude_deg * std::numbers::pi / 180.0;
  const double base = omega * t;

  SkeletonPose pose = bind;

  // Chain of four joints: the first stays, the second swings about it, the
  // rest follow the lower segment.
  auto pose_chain = [&](std::array<JointId, 4> chain, double phase, double flex_sign) {
    const double swing = amp * std::sin(phase);
    const double flex = amp * (1.0 + std::sin(phase));
    const Mat3 upper = rot_x(swing);
    const Mat3 lower = rot_x(swing + flex_sign * flex);
    pose[chain[1]].position =
        pose[chain[0]].position + upper * (bind[chain[1]].position - bind[chain[0]].position);
    for (int i = 2; i < 4; ++i) {
      pose[chain[i]].position =
          pose[chain[i - 1]].position +
          lower * (bind[chain[i]].position - bind[chain[i - 1]].position);
    }
  };

  const double pi = std::numbers::pi;
  // Elbows flex forward, knees backward.
  pose_chain({J::ShoulderLeft, J::ElbowLeft, J::WristLeft, J::HandLeft}, base + pi, 1.0);
  pose_chain({J::ShoulderRight, J::ElbowRight, J::WristRight, J::HandRight}, base, 1.0);
  pose_chain({J::HipLeft, J::KneeLeft, J::AnkleLeft, J::FootLeft}, base, -1.0);
  pose_chain({J::HipRight, J::KneeRight, J::AnkleRight, J::FootRight}, base + pi, -1.0);

  const Vec3 root(gait.x0 + gait.speed * t, gait.y0, gait.z0);
  for (Joint& j : pose.joints) {
    j.position += root;
    j.state = TrackingState::Tracked;
  }
  return pose;
}

}  // namespace reveil::skeleton
