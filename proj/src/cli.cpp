#include "reveil/cli.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <CLI11.hpp>

#include "reveil/bmp.hpp"
#include "reveil/pipeline.hpp"
#include "reveil/stego.hpp"

namespace reveil::cli {

namespace {

std::string hex32(std::uint32_t v) {
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "0x%08x", v);
  return buf.data();
}

std::string format_db(double db) {
  if (std::isinf(db)) return "inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4f", db);
  return buf.data();
}

int inspect(const std::string& path, std::ostream& out, std::ostream& err) {
  const ImageBuffer img = bmp::read_file(path);
  const stego::StegoHeader h = stego::read_header(img);
  out << "magic    SDID\n"
      << "version  " << int(h.version) << "\n"
      << "k        " << h.k.value() << "\n"
      << "roi      " << h.roi.x << " " << h.roi.y << " " << h.roi.w << " " << h.roi.h << "\n"
      << "crc      " << hex32(h.crc) << "\n";
  try {
    stego::extract(img);
  } catch (const Error& e) {
    if (e.code() == Errc::CrcMismatch) {
      out << "crc_ok   no\n";
      err << "error: " << e.what() << "\n";
      return kIntegrity;
    }
    throw;
  }
  out << "crc_ok   yes\n";
  return kSuccess;
}

void print_summary(const pipeline::SequenceReport& report, std::ostream& out) {
  out << "processed " << report.frames.size() << " frame(s)\n";
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return kUsage;
    case Errc::CrcMismatch: return kIntegrity;
    case Errc::IoError:
    case Errc::MissingPoseFile: return kIo;
    default: return kFormat;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reveil: reversible de-identification of image sequences", "reveil"};
  app.require_subcommand(1);

  pipeline::PipelineConfig cfg;
  std::string in_dir, out_dir, frame_path, a_path, b_path;
  int k = 4;
  int frames = 0;

  auto* deid = app.add_subcommand("deidentify", "conceal the person in every frame of a sequence");
  deid->add_option("--in", in_dir, "input directory (frame_NNNNNN.bmp + .pose)")->required();
  deid->add_option("--out", out_dir, "output directory")->required();
  deid->add_option("--k", k, "carrier bits per channel used for the payload")
      ->check(CLI::Range(1, 7));
  deid->add_option("--padding", cfg.padding, "bounding box padding in pixels")
      ->check(CLI::NonNegativeNumber);
  deid->add_option("--block", cfg.mask.block, "pixelization block size")
      ->check(CLI::PositiveNumber);
  deid->add_option("--blur-radius", cfg.mask.blur_radius, "box blur radius")
      ->check(CLI::NonNegativeNumber);
  deid->add_option("--blur-passes", cfg.mask.blur_passes, "box blur passes")
      ->check(CLI::NonNegativeNumber);

  auto* reid = app.add_subcommand("reidentify", "restore the concealed person regions");
  reid->add_option("--in", in_dir, "input directory of stego frames")->required();
  reid->add_option("--out", out_dir, "output directory")->required();

  auto* synth = app.add_subcommand("synth", "write a synthetic walking sequence with poses");
  synth->add_option("--frames", frames, "number of frames")->required()->check(
      CLI::NonNegativeNumber);
  synth->add_option("--out", out_dir, "output directory")->required();

  auto* insp = app.add_subcommand("inspect", "decode and verify the header of a stego frame");
  insp->add_option("--frame", frame_path, "BMP file")->required();

  auto* metrics = app.add_subcommand("metrics", "PSNR between two BMP files");
  metrics->add_option("--a", a_path, "first BMP")->required();
  metrics->add_option("--b", b_path, "second BMP")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*deid) {
      cfg.k = stego::BitDepth(k);
      print_summary(
          pipeline::process_sequence(in_dir, out_dir, cfg, pipeline::Mode::Deidentify), out);
    } else if (*reid) {
      print_summary(
          pipeline::process_sequence(in_dir, out_dir, cfg, pipeline::Mode::Reidentify), out);
    } else if (*synth) {
      pipeline::write_synthetic_sequence(frames, out_dir);
      out << "wrote " << frames << " synthetic frame(s) to " << out_dir << "\n";
    } else if (*insp) {
      return inspect(frame_path, out, err);
    } else if (*metrics) {
      out << format_db(psnr(bmp::read_file(a_path), bmp::read_file(b_path))) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kSuccess;
}

}  // namespace reveil::cli
