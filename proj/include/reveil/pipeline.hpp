#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reveil/avatar.hpp"
#include "reveil/image.hpp"
#include "reveil/masking.hpp"
#include "reveil/skeleton.hpp"
#include "reveil/stego.hpp"

namespace reveil::pipeline {

struct PipelineConfig {
  stego::BitDepth k{4};
  int padding = 24;
  masking::MaskConfig mask;
  avatar::RenderConfig render;
  std::optional<skeleton::CameraIntrinsics> intrinsics_override;
};

struct FrameReport {
  int frame = 0;
  Rect roi;
  int k = 0;
  double psnr_db = 0.0;  // +inf when nothing changed
  std::uint32_t crc = 0;
  double ms_mask = 0.0;
  double ms_render = 0.0;
  double ms_embed = 0.0;
};

/// Reusable per-configuration state; the avatar rig is built once.
class Deidentifier {
 public:
  explicit Deidentifier(PipelineConfig cfg = {});

  const PipelineConfig& config() const noexcept { return cfg_; }

  /// roi from the projected skeleton; original roi pixels are captured first,
  /// then the region is pixelized and blurred, the avatar drawn on top and the
  /// original pixels embedded. Errors: FrameTooNarrow plus anything the
  /// stages raise.
  std::pair<ImageBuffer, FrameReport> run(const ImageBuffer& frame,
                                          const skeleton::SkeletonPose& pose,
                                          const skeleton::CameraIntrinsics& cam,
                                          int frame_id = 0) const;

 private:
  PipelineConfig cfg_;
  avatar::AvatarRenderer renderer_;
};

std::pair<ImageBuffer, FrameReport> deidentify_frame(const ImageBuffer& frame,
                                                     const skeleton::SkeletonPose& pose,
                                                     const skeleton::CameraIntrinsics& cam,
                                                     const PipelineConfig& cfg = {});

/// Pastes the recovered person region back. Errors: NotStego, CrcMismatch,
/// UnsupportedVersion, InvalidHeader, MalformedRoi.
std::pair<ImageBuffer, stego::StegoHeader> reidentify_frame(const ImageBuffer& stego_frame);

enum class Mode { Deidentify, Reidentify, Synth };

struct SequenceReport {
  std::vector<FrameReport> frames;
};

std::string frame_name(int index, std::string_view extension);

/// Indices of frame_NNNNNN.bmp files in dir. Errors: IoError,
/// NonContiguousFrames.
std::vector<int> list_frames(const std::filesystem::path& dir);

std::string report_csv(const SequenceReport& report);

/// Processes every frame of input_dir in ascending order into output_dir and
/// writes report.csv there. Deidentify reads frame_NNNNNN.pose next to each
/// frame; synth takes poses from synth_pose(index) instead.
/// Errors: MissingPoseFile, NonContiguousFrames, IoError, and any per-frame
/// error, rethrown with the frame name prefixed.
SequenceReport process_sequence(const std::filesystem::path& input_dir,
                                const std::filesystem::path& output_dir, const PipelineConfig& cfg,
                                Mode mode);

/// Synthetic input frame: textured background plus a textured person stand-in
/// posed by synth_pose(t). Width must be >= 48.
ImageBuffer synth_frame(const skeleton::SkeletonPose& pose, const skeleton::CameraIntrinsics& cam,
                        int width = 640, int height = 480);

/// Writes frames 0..count-1 (bmp + pose) for the default gait.
void write_synthetic_sequence(int count, const std::filesystem::path& output_dir,
                              const skeleton::CameraIntrinsics& cam = {},
                              const skeleton::GaitParams& gait = {});

}  // namespace reveil::pipeline
