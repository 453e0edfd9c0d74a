#include "reveil/masking.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "reveil/error.hpp"

namespace reveil::masking {

namespace {

// floor(sum / n + 1/2) for non-negative sums.
std::uint8_t mean_half_up(std::uint64_t sum, std::uint64_t n) {
  return static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
}

}  // namespace

void MaskConfig::validate() const {
  if (block < 1) throw Error(Errc::InvalidArgument, "block must be >= 1");
  if (blur_radius < 0) throw Error(Errc::InvalidArgument, "blur radius must be >= 0");
  if (blur_passes < 0) throw Error(Errc::InvalidArgument, "blur passes must be >= 0");
}

ImageBuffer pixelize(ImageBuffer img, const Rect& r, int block) {
  validate_rect(r, img.width(), img.height());
  if (block < 1) throw Error(Errc::InvalidArgument, "block must be >= 1");
  if (block == 1) return img;

  for (int cy = r.y; cy < r.bottom(); cy += block) {
    const int y1 = std::min(cy + block, r.bottom());
    for (int cx = r.x; cx < r.right(); cx += block) {
      const int x1 = std::min(cx + block, r.right());
      std::array<std::uint64_t, 3> sum{};
      for (int y = cy; y < y1; ++y) {
        for (int x = cx; x < x1; ++x) {
          const Rgb& p = img.at(x, y);
          sum[0] += p.r;
          sum[1] += p.g;
          sum[2] += p.b;
        }
      }
      const auto n = static_cast<std::uint64_t>(y1 - cy) * static_cast<std::uint64_t>(x1 - cx);
      const Rgb mean{mean_half_up(sum[0], n), mean_half_up(sum[1], n), mean_half_up(sum[2], n)};
      for (int y = cy; y < y1; ++y) {
        for (int x = cx; x < x1; ++x) img.at(x, y) = mean;
      }
    }
  }
  return img;
}

ImageBuffer box_blur(ImageBuffer img, const Rect& r, int radius, int passes) {
  validate_rect(r, img.width(), img.height());
  if (radius < 0 || passes < 0) {
    throw Error(Errc::InvalidArgument, "blur radius and passes must be non-negative");
  }
  if (radius == 0 || passes == 0) return img;

  // The clamped window sum is separable: horizontal sums first, then vertical
  // sums of those. Both stages are exact integers, so rounding happens once.
  const auto w = static_cast<std::size_t>(r.w);
  const auto h = static_cast<std::size_t>(r.h);
  std::vector<std::array<std::uint32_t, 3>> horiz(w * h);
  const std::uint64_t n = static_cast<std::uint64_t>(2 * radius + 1) * (2 * radius + 1);

  for (int pass = 0; pass < passes; ++pass) {
    for (int v = 0; v < r.h; ++v) {
      auto row = img.row(r.y + v);
      for (int u = 0; u < r.w; ++u) {
        std::array<std::uint32_t, 3> s{};
        for (int d = -radius; d <= radius; ++d) {
          const int xu = std::clamp(u + d, 0, r.w - 1);
          const Rgb& p = row[static_cast<std::size_t>(r.x + xu)];
          s[0] += p.r;
          s[1] += p.g;
          s[2] += p.b;
        }
        horiz[static_cast<std::size_t>(v) * w + static_cast<std::size_t>(u)] = s;
      }
    }
    for (int v = 0; v < r.h; ++v) {
      auto row = img.row(r.y + v);
      for (int u = 0; u < r.w; ++u) {
        std::array<std::uint64_t, 3> s{};
        for (int d = -radius; d <= radius; ++d) {
          const int yv = std::clamp(v + d, 0, r.h - 1);
          const auto& hs = horiz[static_cast<std::size_t>(yv) * w + static_cast<std::size_t>(u)];
          s[0] += hs[0];
          s[1] += hs[1];
          s[2] += hs[2];
        }
        row[static_cast<std::size_t>(r.x + u)] =
            Rgb{mean_half_up(s[0], n), mean_half_up(s[1], n), mean_half_up(s[2], n)};
      }
    }
  }
  return img;
}

ImageBuffer conceal(ImageBuffer img, const Rect& r, const MaskConfig& cfg) {
  cfg.validate();
  img = pixelize(std::move(img), r, cfg.block);
  return box_blur(std::move(img), r, cfg.blur_radius, cfg.blur_passes);
}

}  // namespace reveil::masking
