// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "reveil/avatar.hpp"
#include "reveil/bmp.hpp"
#include "reveil/cli.hpp"
#include "reveil/crc32.hpp"
#include "reveil/error.hpp"
#include "reveil/image.hpp"
#include "reveil/pipeline.hpp"
#include "reveil/skeleton.hpp"
#include "reveil/stego.hpp"

using namespace reveil;
namespace fs = std::filesystem;
using skeleton::Mat3;
using skeleton::Vec3;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double psnr_floor(int k) { return 20.0 * std::log10(255.0 / ((1 << k) - 1)) - 0.01; }

ImageBuffer random_image(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> byte(0, 255);
  ImageBuffer img(w, h);
  for (Rgb& p : img.pixels()) {
    p = Rgb{std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
  }
  return img;
}

bool orthonormal(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-6 &&
         std::abs(r.determinant() - 1.0) <= 1e-6;
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

// -- 1 -----------------------------------------------------------------------
Outcome bit_arithmetic() {
  const stego::BitDepth k(4);
  const int s = stego::combine_channel(225, 139, k);
  const int sec = stego::recover_secret_channel(232, k);
  const int car = stego::recover_carrier_channel(232, k);
  return {s == 232 && sec == 128 && car == 224, fmt("%d/%d/%d", s, sec, car)};
}

// -- 2 -----------------------------------------------------------------------
Outcome channel_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  long cases = 0, bad = 0;
  for (int k = 1; k <= 7; ++k) {
    const stego::BitDepth bd(k);
    const int low_secret = (1 << (8 - k)) - 1;
    const int low_carrier = (1 << k) - 1;
    for (int c = 0; c < 256; ++c) {
      for (int s = 0; s < 256; ++s) {
        const int st = stego::combine_channel(std::uint8_t(c), std::uint8_t(s), bd);
        const int rs = stego::recover_secret_channel(std::uint8_t(st), bd);
        const int rc = stego::recover_carrier_channel(std::uint8_t(st), bd);
        const bool ok = (st >> k) == (c >> k) && rs == (s - s % (low_secret + 1)) &&
                        rc == (c - c % (low_carrier + 1)) && s - rs >= 0 &&
                        s - rs <= low_secret && c - rc >= 0 && c - rc <= low_carrier;
        ++cases;
        bad += ok ? 0 : 1;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && secs < 5.0, fmt("%ld cases, %ld violations, %.2f s", cases, bad, secs)};
}

// -- 3 -----------------------------------------------------------------------
Outcome tradeoff_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const ImageBuffer carrier = bmp::read_file(REVEIL_FIXTURE_DIR "/carrier_640x480.bmp");
  const ImageBuffer secret_full = bmp::read_file(REVEIL_FIXTURE_DIR "/secret_640x480.bmp");
  const Rect roi{0, 1, 640, 479};
  const ImageBuffer secret = crop(secret_full, roi);

  double stego_db[8], rec_db[8];
  for (int k = 1; k <= 7; ++k) {
    const ImageBuffer st = stego::embed(carrier, secret, roi, stego::BitDepth(k));
    stego_db[k] = psnr(st, carrier);
    rec_db[k] = psnr(stego::extract(st).secret, secret);
  }
  bool mono = true;
  int cross = 1;
  for (int k = 1; k <= 7; ++k) {
    if (k > 1) mono = mono && stego_db[k] < stego_db[k - 1] && rec_db[k] > rec_db[k - 1];
    if (std::abs(stego_db[k] - rec_db[k]) < std::abs(stego_db[cross] - rec_db[cross])) cross = k;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string curve;
  for (int k = 1; k <= 7; ++k) curve += fmt(" k%d %.1f/%.1f", k, stego_db[k], rec_db[k]);
  return {mono && cross >= 3 && cross <= 5 && secs < 10.0,
          fmt("crossover k=%d, monotone=%s, %.2f s;", cross, mono ? "yes" : "no", secs) + curve};
}

// -- 4 -----------------------------------------------------------------------
Outcome psnr_floor_random() {
  std::mt19937 rng(2024);
  double worst_margin = std::numeric_limits<double>::infinity();
  int violations = 0;
  const Rect roi{0, 1, 64, 63};
  for (int trial = 0; trial < 100; ++trial) {
    const ImageBuffer carrier = random_image(rng, 64, 64);
    const ImageBuffer secret = random_image(rng, 64, 63);
    for (int k = 1; k <= 7; ++k) {
      const double db = psnr(stego::embed(carrier, secret, roi, stego::BitDepth(k)), carrier);
      worst_margin = std::min(worst_margin, db - psnr_floor(k));
      violations += db >= psnr_floor(k) ? 0 : 1;
    }
  }
  return {violations == 0, fmt("700 embeds, smallest margin %.3f dB", worst_margin)};
}

// -- 5 -----------------------------------------------------------------------
Outcome bmp_codec() {
  std::mt19937 rng(5);
  int mismatches = 0;
  for (int w = 1; w <= 8; ++w) {
    for (int h = 1; h <= 4; ++h) {
      const ImageBuffer img = random_image(rng, w, h);
      mismatches += bmp::decode(bmp::encode(img)) == img ? 0 : 1;
    }
  }
  const auto one = bmp::encode(ImageBuffer(1, 1, Rgb{0, 0, 255}));
  // 1x1 blue pixel: headers, then B G R and one pad byte.
  const std::vector<std::uint8_t> hex = {
      0x42, 0x4d, 0x3a, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x36, 0x00, 0x00, 0x00, 0x28,
      0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x00, 0x18, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x04, 0x00, 0x00, 0x00, 0x13, 0x0b, 0x00, 0x00, 0x13, 0x0b, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xff, 0x00, 0x00, 0x00};
  const ImageBuffer decoded = bmp::decode(hex);
  const bool hex_ok = decoded.width() == 1 && decoded.height() == 1 &&
                      decoded.at(0, 0) == Rgb{0, 0, 255} && one == hex;
  return {mismatches == 0 && one.size() == 58 && hex_ok,
          fmt("32 sizes, %d mismatches, 1x1 = %zu bytes, hex fixture %s", mismatches, one.size(),
              hex_ok ? "ok" : "differs")};
}

// -- 6 -----------------------------------------------------------------------
Outcome crc_check_value() {
  const std::uint32_t v = crc32(std::string_view("123456789"));
  return {v == 0xCBF43926u, fmt("0x%08X", v)};
}

// -- 7 -----------------------------------------------------------------------
Outcome fk_lbs() {
  const auto& bind = skeleton::bind_pose();
  const avatar::RiggedMesh mesh = avatar::build_rig(bind, avatar::RenderConfig{});
  double err = 0.0;
  bool rot_ok = true;

  auto track = [&](const skeleton::BoneTransforms& tr) {
    for (const auto& t : tr) rot_ok = rot_ok && orthonormal(t.rotation);
  };

  // pose == bind
  const auto same = skeleton::bone_transforms(bind, bind);
  track(same);
  for (const auto& t : same) {
    err = std::max(err, (t.rotation - Mat3::Identity()).cwiseAbs().maxCoeff());
    err = std::max(err, t.translation.norm());
  }
  const auto skinned = avatar::skin(mesh, same);
  for (std::size_t i = 0; i < skinned.size(); ++i) {
    err = std::max(err, (skinned[i] - mesh.vertices[i]).norm());
  }

  // whole-body translation
  const Vec3 shift(0.25, -0.1, 2.5);
  auto moved = bind;
  for (auto& j : moved.joints) j.position += shift;
  const auto tr = skeleton::bone_transforms(moved, bind);
  track(tr);
  for (const auto& t : tr) {
    err = std::max(err, (t.rotation - Mat3::Identity()).cwiseAbs().maxCoeff());
    for (const Vec3& q : mesh.vertices) err = std::max(err, (t.apply(q) - (q + shift)).norm());
  }

  // whole-body rigid motion, on synthetic walk poses
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Mat3 g =
        Eigen::AngleAxisd(3.0 * u(rng), Vec3(u(rng), u(rng), u(rng)).normalized())
            .toRotationMatrix();
    const Vec3 gt(u(rng), u(rng), 3.0 + u(rng));
    const auto pose = skeleton::synth_pose(trial);
    auto posed = pose;
    for (auto& j : posed.joints) j.position = g * j.position + gt;
    const auto before = skeleton::bone_transforms(pose, bind);
    const auto after = skeleton::bone_transforms(posed, bind);
    track(before);
    track(after);
    for (int b = 0; b < skeleton::kBoneCount; ++b) {
      const auto& t0 = before[static_cast<std::size_t>(b)];
      const auto& t1 = after[static_cast<std::size_t>(b)];
      for (const Vec3& q : {bind[skeleton::bone_parent(b)].position,
                            bind[skeleton::bone_child(b)].position}) {
        err = std::max(err, (t1.apply(q) - (g * t0.apply(q) + gt)).norm());
      }
    }
    // One rigid motion on every bone moves the skinned mesh rigidly.
    skeleton::BoneTransforms all;
    all.fill(skeleton::BoneTransform{g, gt});
    const auto rigid = avatar::skin(mesh, all);
    for (std::size_t i = 0; i < rigid.size(); ++i) {
      err = std::max(err, (rigid[i] - (g * mesh.vertices[i] + gt)).norm());
    }
  }

  double weight_err = 0.0;
  for (const auto& w : mesh.weights) weight_err = std::max(weight_err, std::abs(w[0].weight + w[1].weight - 1.0));

  return {err <= 1e-6 && rot_ok && weight_err <= 1e-6,
          fmt("max deviation %.2e m, rotations %s, weight error %.1e", err,
              rot_ok ? "orthonormal" : "NOT orthonormal", weight_err)};
}

// -- 8 -----------------------------------------------------------------------
Outcome renderer() {
  const skeleton::CameraIntrinsics cam;
  const auto pose = skeleton::synth_pose(0);
  std::mt19937 rng(8);
  const ImageBuffer bg = random_image(rng, 640, 480);
  const ImageBuffer a = avatar::render_avatar(bg, pose, cam);
  const ImageBuffer b = avatar::render_avatar(bg, pose, cam);
  const bool deterministic = a == b;

  // Footprint from a render on black: everything outside keeps the background.
  const ImageBuffer mask = avatar::render_avatar(ImageBuffer(640, 480), pose, cam);
  long uncovered_changed = 0, covered = 0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) {
    if (mask.pixels()[i] == Rgb{}) {
      uncovered_changed += a.pixels()[i] == bg.pixels()[i] ? 0 : 1;
    } else {
      ++covered;
    }
  }

  // Three pixel centers, two stacked triangles, both draw orders.
  const skeleton::CameraIntrinsics unit{1.0, 1.0, 0.0, 0.0};
  auto tri = [](double z) {
    return std::vector<Vec3>{Vec3(-0.5 * z, 0.5 * z, z), Vec3(2.2 * z, 0.5 * z, z),
                             Vec3(-0.5 * z, -2.2 * z, z)};
  };
  const Rgb near_c{220, 30, 30}, far_c{30, 30, 220};
  const std::vector<std::array<int, 3>> tris{{0, 1, 2}, {3, 4, 5}};
  bool occlusion = true;
  for (bool near_first : {true, false}) {
    auto v = tri(near_first ? 2.0 : 3.0);
    const auto w = tri(near_first ? 3.0 : 2.0);
    v.insert(v.end(), w.begin(), w.end());
    const std::vector<Rgb> colors = near_first ? std::vector<Rgb>{near_c, far_c}
                                               : std::vector<Rgb>{far_c, near_c};
    const ImageBuffer out = avatar::rasterize(v, tris, colors, unit, ImageBuffer(3, 3));
    for (int y = 0; y < 3; ++y) {
      for (int x = 0; x < 3; ++x) {
        const bool inside = x + y <= 1;
        occlusion = occlusion && out.at(x, y) == (inside ? near_c : Rgb{});
      }
    }
  }
  return {deterministic && uncovered_changed == 0 && covered > 0 && occlusion,
          fmt("deterministic %s, %ld covered px, %ld uncovered px changed, occlusion %s",
              deterministic ? "yes" : "no", covered, uncovered_changed,
              occlusion ? "nearer wins" : "WRONG")};
}

// -- 9 and 10 ------------------------------------------------------------------
struct RunResult {
  Outcome reversibility;
  Outcome concealment;
};

RunResult end_to_end() {
  const fs::path root = fs::temp_directory_path() / "reveil_acceptance";
  fs::remove_all(root);
  const fs::path src = root / "src", deid = root / "deid", back = root / "back";
  RunResult res;

  int rc_synth = cli({"synth", "--frames", "10", "--out", src.string()});
  int rc_deid = cli({"deidentify", "--in", src.string(), "--out", deid.string(), "--k", "4"});
  int rc_reid = cli({"reidentify", "--in", deid.string(), "--out", back.string()});
  if (rc_synth != 0 || rc_deid != 0 || rc_reid != 0) {
    res.reversibility = {false, fmt("exit codes synth=%d deidentify=%d reidentify=%d", rc_synth,
                                    rc_deid, rc_reid)};
    res.concealment = {false, "pipeline did not run"};
    return res;
  }

  int worst = 0, inspect_bad = 0;
  bool below = true;
  long changed = 0, area = 0;
  double min_frame = 1.0;
  for (int i = 0; i < 10; ++i) {
    const std::string name = pipeline::frame_name(i, "bmp");
    const ImageBuffer orig = bmp::read_file(src / name);
    const ImageBuffer stego_frame = bmp::read_file(deid / name);
    const ImageBuffer restored = bmp::read_file(back / name);
    const Rect roi = stego::read_header(stego_frame).roi;
    long frame_changed = 0;
    for (int y = roi.y; y < roi.bottom(); ++y) {
      for (int x = roi.x; x < roi.right(); ++x) {
        const Rgb o = orig.at(x, y), r = restored.at(x, y), s = stego_frame.at(x, y);
        for (int d : {o.r - r.r, o.g - r.g, o.b - r.b}) {
          below = below && d >= 0;
          worst = std::max(worst, d);
        }
        if ((o.r >> 4) != (s.r >> 4) || (o.g >> 4) != (s.g >> 4) || (o.b >> 4) != (s.b >> 4)) {
          ++frame_changed;
        }
      }
    }
    changed += frame_changed;
    area += static_cast<long>(roi.w) * roi.h;
    min_frame = std::min(min_frame, static_cast<double>(frame_changed) / (roi.w * roi.h));
    inspect_bad += cli({"inspect", "--frame", (deid / name).string()}) == 0 ? 0 : 1;
  }

  // Flip one payload bit in the middle of frame 0's roi.
  const fs::path victim = deid / pipeline::frame_name(0, "bmp");
  ImageBuffer img = bmp::read_file(victim);
  const Rect roi0 = stego::read_header(img).roi;
  img.at(roi0.x + roi0.w / 2, roi0.y + roi0.h / 2).r ^= 1;
  bmp::write_file(victim, img);
  const int rc_corrupt = cli({"inspect", "--frame", victim.string()});

  // Stage timings from the report.
  double worst_ms = 0.0;
  {
    std::ifstream csv(deid / "report.csv");
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      if (f.size() == 11) worst_ms = std::max(worst_ms, std::stod(f[8]) + std::stod(f[9]) + std::stod(f[10]));
    }
  }

  res.reversibility = {below && worst <= 15 && inspect_bad == 0 && rc_corrupt == 3,
                       fmt("max roi error %d (<= 15), inspect failures %d, corrupted exit %d, "
                           "slowest frame %.1f ms",
                           worst, inspect_bad, rc_corrupt, worst_ms)};
  const double frac = static_cast<double>(changed) / static_cast<double>(area);
  res.concealment = {frac >= 0.5, fmt("%.1f%% of roi pixels changed in the top 4 bits "
                                      "(lowest frame %.1f%%)",
                                      100.0 * frac, 100.0 * min_frame)};
  fs::remove_all(root);
  return res;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&failed](int id, const char* what, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %2d  %-32s %s\n", o.pass ? "PASS" : "FAIL", id, what, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  };

  report(1, "bit arithmetic worked example", bit_arithmetic);
  report(2, "exhaustive channel algebra", channel_algebra);
  report(3, "bit depth tradeoff sweep", tradeoff_sweep);
  report(4, "psnr floor, random pairs", psnr_floor_random);
  report(5, "bmp codec", bmp_codec);
  report(6, "crc-32 check value", crc_check_value);
  report(7, "kinematics and skinning", fk_lbs);
  report(8, "renderer determinism, locality", renderer);

  RunResult run;
  try {
    run = end_to_end();
  } catch (const std::exception& e) {
    run.reversibility = {false, std::string("exception: ") + e.what()};
    run.concealment = {false, "pipeline did not run"};
  }
  report(9, "end-to-end reversibility", [&] { return run.reversibility; });
  report(10, "concealment", [&] { return run.concealment; });

  std::printf("%d of 10 passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
