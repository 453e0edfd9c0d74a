#include "reveil/pose_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "reveil/error.hpp"

namespace reveil::skeleton {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

double parse_number(std::string_view tok, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw Error(Errc::BadNumber, at_line(line) + "cannot read \"" + std::string(tok) + "\"");
  }
  return v;
}

std::string fmt6(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

}  // namespace

PoseFile parse_pose(std::string_view text) {
  PoseFile out;
  std::array<bool, kJointCount> seen{};
  bool have_magic = false;
  bool have_camera = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (!have_magic) {
      if (tok.size() != 2 || tok[0] != "POSE" || tok[1] != "v1") {
        throw Error(Errc::SyntaxError, at_line(line_no) + "expected \"POSE v1\"");
      }
      have_magic = true;
    } else if (!have_camera) {
      if (tok[0] != "camera" || tok.size() != 5) {
        throw Error(Errc::SyntaxError,
                    at_line(line_no) + "expected \"camera <fx> <fy> <cx> <cy>\"");
      }
      out.camera = CameraIntrinsics{parse_number(tok[1], line_no), parse_number(tok[2], line_no),
                                    parse_number(tok[3], line_no), parse_number(tok[4], line_no)};
      if (!(out.camera.fx > 0.0) || !(out.camera.fy > 0.0)) {
        throw Error(Errc::BadNumber, at_line(line_no) + "focal lengths must be positive");
      }
      have_camera = true;
    } else {
      if (tok[0] != "joint" || tok.size() != 6) {
        throw Error(Errc::SyntaxError,
                    at_line(line_no) + "expected \"joint <Name> <x> <y> <z> <state>\"");
      }
      const auto id = joint_from_name(tok[1]);
      if (!id) {
        throw Error(Errc::UnknownJointName, at_line(line_no) + std::string(tok[1]));
      }
      auto& flag = seen[static_cast<std::size_t>(index(*id))];
      if (flag) throw Error(Errc::DuplicateJoint, at_line(line_no) + std::string(tok[1]));
      flag = true;
      const auto state = state_from_name(tok[5]);
      if (!state) {
        throw Error(Errc::SyntaxError,
                    at_line(line_no) + "unknown tracking state \"" + std::string(tok[5]) + "\"");
      }
      out.pose[*id] = Joint{Vec3(parse_number(tok[2], line_no), parse_number(tok[3], line_no),
                                 parse_number(tok[4], line_no)),
                            *state};
    }
  }

  if (!have_magic) throw Error(Errc::SyntaxError, at_line(line_no) + "missing \"POSE v1\"");
  if (!have_camera) throw Error(Errc::SyntaxError, at_line(line_no) + "missing camera line");
  for (int i = 0; i < kJointCount; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw Error(Errc::MissingJoint, std::string(name(joint_at(i))));
    }
  }
  return out;
}

std::string serialize_pose(const SkeletonPose& pose, const CameraIntrinsics& cam) {
  std::string s = "POSE v1\n";
  s += "camera " + fmt6(cam.fx) + " " + fmt6(cam.fy) + " " + fmt6(cam.cx) + " " + fmt6(cam.cy) +
       "\n";
  for (int i = 0; i < kJointCount; ++i) {
    const Joint& j = pose.joints[static_cast<std::size_t>(i)];
    s += "joint ";
    s += name(joint_at(i));
    s += " " + fmt6(j.position.x()) + " " + fmt6(j.position.y()) + " " + fmt6(j.position.z()) +
         " ";
    s += name(j.state);
    s += "\n";
  }
  return s;
}

PoseFile read_pose_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pose(ss.str());
}

void write_pose_file(const std::filesystem::path& path, const SkeletonPose& pose,
                     const CameraIntrinsics& cam) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot create " + path.string());
  out << serialize_pose(pose, cam);
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

}  // namespace reveil::skeleton
