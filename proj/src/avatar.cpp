#include "reveil/avatar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Geometry>

#include "reveil/error.hpp"

namespace reveil::avatar {

using skeleton::BoneTransforms;
using skeleton::CameraIntrinsics;
using skeleton::JointId;
using skeleton::kBoneCount;
using skeleton::kJointCount;
using skeleton::SkeletonPose;

namespace {

struct Screen {
  double x;
  double y;
};

double edge(const Screen& a, const Screen& b, const Screen& p) {
  return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

// For positively oriented triangles in y-down image coordinates.
bool top_left(const Screen& a, const Screen& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

bool covers(double w, bool is_top_left) { return w > 0.0 || (w == 0.0 && is_top_left); }

std::uint8_t shade_channel(std::uint8_t base, double intensity) {
  const double v = std::floor(intensity * base + 0.5);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, static_cast<double>(base)));
}

// Coordinate axis least aligned with d, made perpendicular to it.
Vec3 perpendicular(const Vec3& d) {
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(d[i]) < std::abs(d[axis])) axis = i;
  }
  Vec3 e = Vec3::Unit(axis);
  return (e - e.dot(d) * d).normalized();
}

std::array<int, kJointCount> child_counts() {
  std::array<int, kJointCount> counts{};
  for (int b = 0; b < kBoneCount; ++b) ++counts[static_cast<std::size_t>(index(skeleton::bone_parent(b)))];
  return counts;
}

// The single outgoing bone of j, if j chains exactly one bone in and one out.
std::optional<int> chain_successor(JointId j) {
  static const auto counts = child_counts();
  if (j == JointId::HipCenter || counts[static_cast<std::size_t>(index(j))] != 1) {
    return std::nullopt;
  }
  for (int b = 0; b < kBoneCount; ++b) {
    if (skeleton::bone_parent(b) == j) return b;
  }
  return std::nullopt;
}

}  // namespace

std::array<double, kBoneCount> RenderConfig::default_radii() {
  std::array<double, kBoneCount> r{};
  auto set = [&r](JointId child, double radius) {
    r[static_cast<std::size_t>(*skeleton::bone_ending_at(child))] = radius;
  };
  set(JointId::Spine, 0.10);
  set(JointId::ShoulderCenter, 0.10);
  set(JointId::Head, 0.09);
  for (auto [shoulder, elbow, wrist, hand] :
       {std::array{JointId::ShoulderLeft, JointId::ElbowLeft, JointId::WristLeft, JointId::HandLeft},
        std::array{JointId::ShoulderRight, JointId::ElbowRight, JointId::WristRight,
                   JointId::HandRight}}) {
    set(shoulder, 0.10);  // clavicle, part of the torso
    set(elbow, 0.05);
    set(wrist, 0.04);
    set(hand, 0.03);
  }
  for (auto [hip, knee, ankle, foot] :
       {std::array{JointId::HipLeft, JointId::KneeLeft, JointId::AnkleLeft, JointId::FootLeft},
        std::array{JointId::HipRight, JointId::KneeRight, JointId::AnkleRight,
                   JointId::FootRight}}) {
    set(hip, 0.10);  // pelvis, part of the torso
    set(knee, 0.08);
    set(ankle, 0.06);
    set(foot, 0.04);
  }
  return r;
}

std::array<Rgb, kBoneCount> RenderConfig::default_part_colors() {
  constexpr Rgb torso{70, 110, 180};
  constexpr Rgb skin{225, 190, 160};
  constexpr Rgb sleeve{90, 130, 200};
  constexpr Rgb trousers{60, 60, 70};
  constexpr Rgb shoe{35, 30, 30};

  std::array<Rgb, kBoneCount> c{};
  auto set = [&c](JointId child, Rgb color) {
    c[static_cast<std::size_t>(*skeleton::bone_ending_at(child))] = color;
  };
  set(JointId::Spine, torso);
  set(JointId::ShoulderCenter, torso);
  set(JointId::Head, skin);
  set(JointId::ShoulderLeft, torso);
  set(JointId::ShoulderRight, torso);
  set(JointId::ElbowLeft, sleeve);
  set(JointId::ElbowRight, sleeve);
  set(JointId::WristLeft, skin);
  set(JointId::WristRight, skin);
  set(JointId::HandLeft, skin);
  set(JointId::HandRight, skin);
  set(JointId::HipLeft, trousers);
  set(JointId::HipRight, trousers);
  set(JointId::KneeLeft, trousers);
  set(JointId::KneeRight, trousers);
  set(JointId::AnkleLeft, trousers);
  set(JointId::AnkleRight, trousers);
  set(JointId::FootLeft, shoe);
  set(JointId::FootRight, shoe);
  return c;
}

void RenderConfig::validate() const {
  if (segments < 3) throw Error(Errc::InvalidArgument, "segments must be >= 3");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::InvalidArgument, "radii must be > 0");
  }
  if (!(ambient >= 0.0 && ambient <= 1.0)) {
    throw Error(Errc::InvalidArgument, "ambient must be in [0, 1]");
  }
  if (!(light_dir.norm() > 0.0)) throw Error(Errc::InvalidArgument, "light direction is zero");
}

RiggedMesh build_rig(const SkeletonPose& bind, const RenderConfig& cfg) {
  cfg.validate();
  const int seg = cfg.segments;
  RiggedMesh mesh;
  mesh.part_colors = cfg.part_colors;
  mesh.vertices.reserve(static_cast<std::size_t>(kBoneCount * (2 * seg + 2)));

  for (int b = 0; b < kBoneCount; ++b) {
    const JointId pj = skeleton::bone_parent(b);
    const JointId cj = skeleton::bone_child(b);
    const Vec3 p = bind[pj].position;
    const Vec3 c = bind[cj].position;
    const Vec3 along = c - p;
    if (!(along.norm() > 1e-9)) {
      throw Error(Errc::DegenerateBone, "bind bone " + std::string(skeleton::name(pj)) + " -> " +
                                            std::string(skeleton::name(cj)) + " has zero length");
    }
    const Vec3 a = along.normalized();
    const Vec3 u = perpendicular(a);
    const Vec3 v = a.cross(u);
    const double radius = cfg.radii[static_cast<std::size_t>(b)];

    std::array<BoneWeight, 2> at_parent{BoneWeight{b, 1.0}, BoneWeight{b, 0.0}};
    if (const auto in = skeleton::bone_ending_at(pj); in && chain_successor(pj)) {
      at_parent = {BoneWeight{*in, 0.5}, BoneWeight{b, 0.5}};
    }
    std::array<BoneWeight, 2> at_child{BoneWeight{b, 1.0}, BoneWeight{b, 0.0}};
    if (const auto out = chain_successor(cj)) {
      at_child = {BoneWeight{b, 0.5}, BoneWeight{*out, 0.5}};
    }

    const int base = static_cast<int>(mesh.vertices.size());
    for (int end = 0; end < 2; ++end) {
      const Vec3& center = end == 0 ? p : c;
      for (int j = 0; j < seg; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / seg;
        mesh.vertices.push_back(center + radius * (std::cos(theta) * u + std::sin(theta) * v));
        mesh.weights.push_back(end == 0 ? at_parent : at_child);
      }
    }
    mesh.vertices.push_back(p);
    mesh.weights.push_back(at_parent);
    mesh.vertices.push_back(c);
    mesh.weights.push_back(at_child);

    const int cap0 = base + 2 * seg;
    const int cap1 = cap0 + 1;
    // Outward winding: (u, v, a) is right-handed.
    for (int j = 0; j < seg; ++j) {
      const int j1 = (j + 1) % seg;
      const int a0 = base + j, a1 = base + j1;
      const int b0 = base + seg + j, b1 = base + seg + j1;
      mesh.triangles.push_back({a0, a1, b1});
      mesh.triangles.push_back({a0, b1, b0});
    }
    for (int j = 0; j < seg; ++j) {
      const int j1 = (j + 1) % seg;
      mesh.triangles.push_back({cap0, base + j1, base + j});
    }
    for (int j = 0; j < seg; ++j) {
      const int j1 = (j + 1) % seg;
      mesh.triangles.push_back({cap1, base + seg + j, base + seg + j1});
    }
    mesh.triangle_bone.insert(mesh.triangle_bone.end(), static_cast<std::size_t>(4 * seg), b);
  }
  return mesh;
}

std::vector<Vec3> skin(const RiggedMesh& mesh, const BoneTransforms& transforms) {
  std::vector<Vec3> out(mesh.vertices.size(), Vec3::Zero());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (const BoneWeight& bw : mesh.weights[i]) {
      if (bw.weight == 0.0) continue;
      out[i] += bw.weight * transforms[static_cast<std::size_t>(bw.bone)].apply(mesh.vertices[i]);
    }
  }
  return out;
}

ImageBuffer rasterize(std::span<const Vec3> vertices, std::span<const std::array<int, 3>> triangles,
                      std::span<const Rgb> triangle_colors, const CameraIntrinsics& cam,
                      ImageBuffer target, const Vec3& light_dir, double ambient) {
  if (triangle_colors.size() != triangles.size()) {
    throw Error(Errc::DimensionMismatch, "one color per triangle required");
  }
  cam.validate();
  const Vec3 to_light = -light_dir.normalized();
  const int width = target.width();
  const int height = target.height();
  std::vector<double> zbuf(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                           std::numeric_limits<double>::infinity());

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    std::array<Vec3, 3> v;
    bool visible = true;
    for (int k = 0; k < 3; ++k) {
      const int idx = tri[static_cast<std::size_t>(k)];
      if (idx < 0 || static_cast<std::size_t>(idx) >= vertices.size()) {
        throw Error(Errc::InvalidArgument, "triangle index out of range");
      }
      v[static_cast<std::size_t>(k)] = vertices[static_cast<std::size_t>(idx)];
      if (!(v[static_cast<std::size_t>(k)].z() > 0.0)) visible = false;
    }
    if (!visible) continue;

    std::array<Screen, 3> s;
    std::array<double, 3> z;
    for (std::size_t k = 0; k < 3; ++k) {
      s[k] = Screen{cam.cx + cam.fx * v[k].x() / v[k].z(), cam.cy - cam.fy * v[k].y() / v[k].z()};
      z[k] = v[k].z();
    }
    double area = edge(s[0], s[1], s[2]);
    if (area == 0.0 || !std::isfinite(area)) continue;
    if (area < 0.0) {
      std::swap(s[1], s[2]);
      std::swap(z[1], z[2]);
      area = -area;
    }

    Vec3 n = (v[1] - v[0]).cross(v[2] - v[0]);
    if (!(n.norm() > 0.0)) continue;
    n.normalize();
    if (n.dot(v[0] + v[1] + v[2]) > 0.0) n = -n;
    const double intensity = ambient + (1.0 - ambient) * std::max(0.0, n.dot(to_light));
    const Rgb base = triangle_colors[t];
    const Rgb color{shade_channel(base.r, intensity), shade_channel(base.g, intensity),
                    shade_channel(base.b, intensity)};

    const double min_x = std::min({s[0].x, s[1].x, s[2].x});
    const double max_x = std::max({s[0].x, s[1].x, s[2].x});
    const double min_y = std::min({s[0].y, s[1].y, s[2].y});
    const double max_y = std::max({s[0].y, s[1].y, s[2].y});
    const int x0 = static_cast<int>(std::max(0.0, std::ceil(min_x)));
    const int x1 = static_cast<int>(std::min(static_cast<double>(width - 1), std::floor(max_x)));
    const int y0 = static_cast<int>(std::max(0.0, std::ceil(min_y)));
    const int y1 = static_cast<int>(std::min(static_cast<double>(height - 1), std::floor(max_y)));

    const bool tl0 = top_left(s[1], s[2]);
    const bool tl1 = top_left(s[2], s[0]);
    const bool tl2 = top_left(s[0], s[1]);

    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Screen p{static_cast<double>(x), static_cast<double>(y)};
        const double w0 = edge(s[1], s[2], p);
        const double w1 = edge(s[2], s[0], p);
        const double w2 = edge(s[0], s[1], p);
        if (!covers(w0, tl0) || !covers(w1, tl1) || !covers(w2, tl2)) continue;
        const double depth = (w0 * z[0] + w1 * z[1] + w2 * z[2]) / area;
        double& zb = zbuf[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                          static_cast<std::size_t>(x)];
        if (depth < zb) {
          zb = depth;
          target.at(x, y) = color;
        }
      }
    }
  }
  return target;
}

AvatarRenderer::AvatarRenderer(RenderConfig cfg, const SkeletonPose& bind)
    : cfg_(std::move(cfg)), bind_(bind), mesh_(build_rig(bind_, cfg_)) {
  triangle_colors_.reserve(mesh_.triangles.size());
  for (int b : mesh_.triangle_bone) {
    triangle_colors_.push_back(mesh_.part_colors[static_cast<std::size_t>(b)]);
  }
}

std::vector<Vec3> AvatarRenderer::posed_vertices(const SkeletonPose& pose) const {
  return skin(mesh_, skeleton::bone_transforms(pose, bind_));
}

ImageBuffer AvatarRenderer::render(ImageBuffer frame, const SkeletonPose& pose,
                                   const CameraIntrinsics& cam) const {
  skeleton::project(pose, cam);  // rejects joints behind the camera
  const auto posed = posed_vertices(pose);
  return rasterize(posed, mesh_.triangles, triangle_colors_, cam, std::move(frame),
                   cfg_.light_dir, cfg_.ambient);
}

ImageBuffer render_avatar(ImageBuffer frame, const SkeletonPose& pose, const CameraIntrinsics& cam,
                          const RenderConfig& cfg) {
  return AvatarRenderer(cfg).render(std::move(frame), pose, cam);
}

}  // namespace reveil::avatar
