#include "reveil/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>

#include "reveil/bmp.hpp"
#include "reveil/error.hpp"
#include "reveil/pose_file.hpp"

namespace reveil::pipeline {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// splitmix64 finalizer; deterministic per-pixel noise.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int noise(int x, int y, int salt, int amplitude) {
  const std::uint64_t h = mix((static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) ^
                              (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)) << 8) ^
                              static_cast<std::uint64_t>(salt));
  return static_cast<int>(h % static_cast<std::uint64_t>(2 * amplitude + 1)) - amplitude;
}

std::uint8_t clamp8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

[[noreturn]] void rethrow_for_frame(const std::string& frame, const Error& e) {
  throw Error(e.code(), frame + ": " + e.detail());
}

// A broader stand-in body than the avatar, so the avatar alone cannot hide it.
avatar::RenderConfig person_shape() {
  avatar::RenderConfig cfg;
  for (double& r : cfg.radii) r *= 1.4;
  cfg.part_colors.fill(Rgb{255, 255, 255});
  cfg.ambient = 1.0;
  return cfg;
}

}  // namespace

Deidentifier::Deidentifier(PipelineConfig cfg) : cfg_(std::move(cfg)), renderer_(cfg_.render) {
  cfg_.mask.validate();
  if (cfg_.padding < 0) throw Error(Errc::InvalidArgument, "padding must be non-negative");
}

std::pair<ImageBuffer, FrameReport> Deidentifier::run(const ImageBuffer& frame,
                                                      const skeleton::SkeletonPose& pose,
                                                      const skeleton::CameraIntrinsics& cam_in,
                                                      int frame_id) const {
  if (frame.width() < stego::kHeaderPixels) {
    throw Error(Errc::FrameTooNarrow, "frame is " + std::to_string(frame.width()) +
                                          " px wide, at least " +
                                          std::to_string(stego::kHeaderPixels) + " required");
  }
  const skeleton::CameraIntrinsics cam = cfg_.intrinsics_override.value_or(cam_in);

  FrameReport report;
  report.frame = frame_id;
  report.k = cfg_.k.value();

  auto t0 = Clock::now();
  const auto projected = skeleton::project(pose, cam);
  report.roi = skeleton::bounding_rect(projected, cfg_.padding, frame.width(), frame.height());
  const ImageBuffer secret = crop(frame, report.roi);
  ImageBuffer concealed = masking::conceal(frame, report.roi, cfg_.mask);
  report.ms_mask = ms_since(t0);

  t0 = Clock::now();
  ImageBuffer composite = renderer_.render(std::move(concealed), pose, cam);
  report.ms_render = ms_since(t0);

  t0 = Clock::now();
  ImageBuffer out = stego::embed(composite, secret, report.roi, cfg_.k);
  report.ms_embed = ms_since(t0);

  report.psnr_db = psnr(out, composite);
  report.crc = stego::read_header(out).crc;
  return {std::move(out), report};
}

std::pair<ImageBuffer, FrameReport> deidentify_frame(const ImageBuffer& frame,
                                                     const skeleton::SkeletonPose& pose,
                                                     const skeleton::CameraIntrinsics& cam,
                                                     const PipelineConfig& cfg) {
  return Deidentifier(cfg).run(frame, pose, cam);
}

std::pair<ImageBuffer, stego::StegoHeader> reidentify_frame(const ImageBuffer& stego_frame) {
  stego::Extraction ex = stego::extract(stego_frame);
  ImageBuffer restored = blit(stego_frame, ex.header.roi, ex.secret);
  return {std::move(restored), ex.header};
}

std::string frame_name(int index, std::string_view extension) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "frame_%06d.", index);
  return std::string(buf.data()) + std::string(extension);
}

std::vector<int> list_frames(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::IoError, "not a directory: " + dir.string());
  static const std::regex pattern(R"(frame_(\d{6})\.bmp)");
  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) {
      indices.push_back(std::stoi(m[1].str()));
    }
  }
  if (ec) throw Error(Errc::IoError, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != static_cast<int>(i)) {
      throw Error(Errc::NonContiguousFrames, frame_name(static_cast<int>(i), "bmp") + " is missing");
    }
  }
  return indices;
}

std::string report_csv(const SequenceReport& report) {
  std::string s = "frame,roi_x,roi_y,roi_w,roi_h,k,psnr_db,crc_hex,ms_mask,ms_render,ms_embed\n";
  std::array<char, 256> buf{};
  for (const FrameReport& r : report.frames) {
    std::array<char, 32> psnr_text{};
    if (std::isinf(r.psnr_db)) {
      std::snprintf(psnr_text.data(), psnr_text.size(), "inf");
    } else {
      std::snprintf(psnr_text.data(), psnr_text.size(), "%.4f", r.psnr_db);
    }
    std::snprintf(buf.data(), buf.size(), "%d,%d,%d,%d,%d,%d,%s,%08x,%.3f,%.3f,%.3f\n", r.frame,
                  r.roi.x, r.roi.y, r.roi.w, r.roi.h, r.k, psnr_text.data(), r.crc, r.ms_mask,
                  r.ms_render, r.ms_embed);
    s += buf.data();
  }
  return s;
}

SequenceReport process_sequence(const fs::path& input_dir, const fs::path& output_dir,
                                const PipelineConfig& cfg, Mode mode) {
  const std::vector<int> frames = list_frames(input_dir);
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + output_dir.string() + ": " + ec.message());

  if (mode == Mode::Deidentify) {
    for (int i : frames) {
      const fs::path pose_path = input_dir / frame_name(i, "pose");
      if (!fs::exists(pose_path)) throw Error(Errc::MissingPoseFile, frame_name(i, "pose"));
    }
  }

  std::optional<Deidentifier> deid;
  if (mode != Mode::Reidentify) deid.emplace(cfg);

  SequenceReport report;
  for (int i : frames) {
    const std::string name = frame_name(i, "bmp");
    try {
      const ImageBuffer frame = bmp::read_file(input_dir / name);
      if (mode == Mode::Reidentify) {
        const auto t0 = Clock::now();
        auto [restored, header] = reidentify_frame(frame);
        FrameReport r;
        r.frame = i;
        r.roi = header.roi;
        r.k = header.k.value();
        r.crc = header.crc;
        r.ms_embed = ms_since(t0);
        r.psnr_db = psnr(restored, frame);
        bmp::write_file(output_dir / name, restored);
        report.frames.push_back(r);
        continue;
      }
      skeleton::SkeletonPose pose;
      skeleton::CameraIntrinsics cam;
      if (mode == Mode::Deidentify) {
        const auto pf = skeleton::read_pose_file(input_dir / frame_name(i, "pose"));
        pose = pf.pose;
        cam = pf.camera;
      } else {
        pose = skeleton::synth_pose(static_cast<double>(i));
      }
      auto [out, r] = deid->run(frame, pose, cam, i);
      bmp::write_file(output_dir / name, out);
      report.frames.push_back(r);
    } catch (const Error& e) {
      rethrow_for_frame(name, e);
    }
  }

  const fs::path csv = output_dir / "report.csv";
  std::ofstream out(csv, std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot create " + csv.string());
  out << report_csv(report);
  if (!out) throw Error(Errc::IoError, "write failed: " + csv.string());
  return report;
}

ImageBuffer synth_frame(const skeleton::SkeletonPose& pose, const skeleton::CameraIntrinsics& cam,
                        int width, int height) {
  if (width < stego::kHeaderPixels) {
    throw Error(Errc::FrameTooNarrow, "synthetic frames need at least 48 columns");
  }
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      // Wall-ish gradient with coarse tiles and sensor-like grain.
      const int tile = ((x / 32) + (y / 32)) % 2 ? 12 : -12;
      const int base_r = 120 + 60 * x / width + tile;
      const int base_g = 140 - 40 * y / height + tile;
      const int base_b = 100 + 50 * (x + y) / (width + height);
      img.at(x, y) = Rgb{clamp8(base_r + noise(x, y, 1, 10)), clamp8(base_g + noise(x, y, 2, 10)),
                         clamp8(base_b + noise(x, y, 3, 10))};
    }
  }

  static const avatar::AvatarRenderer person(person_shape());
  const ImageBuffer silhouette = person.render(ImageBuffer(width, height), pose, cam);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (silhouette.at(x, y) == Rgb{}) continue;
      // Striped shirt with fabric grain: high-frequency detail that
      // pixelization destroys.
      const bool stripe = ((x + 2 * y) / 3) % 2 == 0;
      const int r = stripe ? 200 : 40;
      const int g = stripe ? 60 : 170;
      const int b = stripe ? 50 : 210;
      img.at(x, y) = Rgb{clamp8(r + noise(x, y, 4, 35)), clamp8(g + noise(x, y, 5, 35)),
                         clamp8(b + noise(x, y, 6, 35))};
    }
  }
  return img;
}

void write_synthetic_sequence(int count, const fs::path& output_dir,
                              const skeleton::CameraIntrinsics& cam,
                              const skeleton::GaitParams& gait) {
  if (count < 0) throw Error(Errc::InvalidArgument, "frame count must be non-negative");
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + output_dir.string() + ": " + ec.message());
  for (int i = 0; i < count; ++i) {
    const auto pose = skeleton::synth_pose(static_cast<double>(i), gait);
    bmp::write_file(output_dir / frame_name(i, "bmp"), synth_frame(pose, cam));
    skeleton::write_pose_file(output_dir / frame_name(i, "pose"), pose, cam);
  }
}

}  // namespace reveil::pipeline
