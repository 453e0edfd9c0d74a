#pragma once

#include <array>
#include <span>
#include <vector>

#include "reveil/image.hpp"
#include "reveil/skeleton.hpp"

namespace reveil::avatar {

using skeleton::Vec3;

struct BoneWeight {
  int bone = 0;
  double weight = 0.0;
};

/// Procedural tube humanoid in bind space.
///
/// Each bone owns one closed tube: two rings of `segments` vertices (parent
/// end first, then child end) followed by two cap centers, so a bone
/// contributes 2*segments + 2 vertices and 4*segments triangles. Vertices and
/// triangles are grouped by bone in bone order.
///
/// Skin weights: rings and caps sitting on a joint that links exactly two
/// bones (one in, one out) are split 0.5/0.5 between them; everything else is
/// bound 1.0 to its own bone.
struct RiggedMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<BoneWeight, 2>> weights;  // unused slot has weight 0
  std::vector<int> triangle_bone;
  std::array<Rgb, skeleton::kBoneCount> part_colors{};
};

struct RenderConfig {
  int segments = 8;
  std::array<double, skeleton::kBoneCount> radii = default_radii();
  /// Direction the light travels, camera space.
  Vec3 light_dir = Vec3(0.0, 0.0, 1.0);
  double ambient = 0.3;
  std::array<Rgb, skeleton::kBoneCount> part_colors = default_part_colors();

  static std::array<double, skeleton::kBoneCount> default_radii();
  static std::array<Rgb, skeleton::kBoneCount> default_part_colors();

  /// Throws Errc::InvalidArgument on segments < 3, non-positive radii,
  /// ambient outside [0, 1] or a zero light direction.
  void validate() const;
};

/// Errors: DegenerateBone.
RiggedMesh build_rig(const skeleton::SkeletonPose& bind, const RenderConfig& cfg);

/// Linear blend skinning: v' = sum_i w_i * M_i(v).
std::vector<Vec3> skin(const RiggedMesh& mesh, const skeleton::BoneTransforms& transforms);

/// Z-buffered flat-shaded fill of camera-space triangles onto target.
///
/// Pixel (i, j) is sampled at its center (i, j) in image-plane coordinates.
/// Coverage uses the top-left rule. Depth is the screen-space barycentric
/// interpolation of camera z; a strictly nearer sample replaces an earlier
/// one, so ties keep the earlier triangle. Triangles with any vertex at
/// z <= 0 and zero-area triangles are skipped. No backface culling.
/// Shade = ambient + (1 - ambient) * max(0, n . -light_dir), n being the unit
/// face normal turned toward the camera; channels round half up.
ImageBuffer rasterize(std::span<const Vec3> vertices, std::span<const std::array<int, 3>> triangles,
                      std::span<const Rgb> triangle_colors, const skeleton::CameraIntrinsics& cam,
                      ImageBuffer target, const Vec3& light_dir = Vec3(0.0, 0.0, 1.0),
                      double ambient = 0.3);

/// Rig built once, reused for every frame.
class AvatarRenderer {
 public:
  explicit AvatarRenderer(RenderConfig cfg = {},
                          const skeleton::SkeletonPose& bind = skeleton::bind_pose());

  const RiggedMesh& mesh() const noexcept { return mesh_; }
  const RenderConfig& config() const noexcept { return cfg_; }

  /// Posed camera-space vertices for pose.
  std::vector<Vec3> posed_vertices(const skeleton::SkeletonPose& pose) const;

  /// Errors: BehindCamera (any joint), DegenerateBone.
  ImageBuffer render(ImageBuffer frame, const skeleton::SkeletonPose& pose,
                     const skeleton::CameraIntrinsics& cam) const;

 private:
  RenderConfig cfg_;
  skeleton::SkeletonPose bind_;
  RiggedMesh mesh_;
  std::vector<Rgb> triangle_colors_;
};

ImageBuffer render_avatar(ImageBuffer frame, const skeleton::SkeletonPose& pose,
                          const skeleton::CameraIntrinsics& cam, const RenderConfig& cfg = {});

}  // namespace reveil::avatar
