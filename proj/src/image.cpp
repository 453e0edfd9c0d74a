#include "reveil/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "reveil/error.hpp"

namespace reveil {

namespace {

std::string describe(const Rect& r) {
  return "(" + std::to_string(r.x) + ", " + std::to_string(r.y) + ", " + std::to_string(r.w) +
         ", " + std::to_string(r.h) + ")";
}

void require_positive_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(Errc::InvalidArgument, "image dimensions must be positive, got " +
                                           std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb fill) : width_(width), height_(height) {
  require_positive_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require_positive_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(Errc::DimensionMismatch, "pixel count " + std::to_string(pixels_.size()) +
                                             " does not match " + std::to_string(width) + "x" +
                                             std::to_string(height));
  }
}

void validate_rect(const Rect& r, int width, int height) {
  // 64-bit sums so huge w/h cannot wrap around.
  const bool ok = r.x >= 0 && r.y >= 0 && r.w >= 1 && r.h >= 1 &&
                  static_cast<long long>(r.x) + r.w <= width &&
                  static_cast<long long>(r.y) + r.h <= height;
  if (!ok) {
    throw Error(Errc::RectOutOfBounds, "rect " + describe(r) + " does not fit in " +
                                           std::to_string(width) + "x" + std::to_string(height));
  }
}

ImageBuffer crop(const ImageBuffer& img, const Rect& r) {
  validate_rect(r, img.width(), img.height());
  ImageBuffer out(r.w, r.h);
  for (int v = 0; v < r.h; ++v) {
    auto src = img.row(r.y + v).subspan(static_cast<std::size_t>(r.x), static_cast<std::size_t>(r.w));
    std::copy(src.begin(), src.end(), out.row(v).begin());
  }
  return out;
}

ImageBuffer blit(ImageBuffer dst, const Rect& r, const ImageBuffer& src) {
  validate_rect(r, dst.width(), dst.height());
  if (src.width() != r.w || src.height() != r.h) {
    throw Error(Errc::DimensionMismatch, "source is " + std::to_string(src.width()) + "x" +
                                             std::to_string(src.height()) + " but rect is " +
                                             describe(r));
  }
  for (int v = 0; v < r.h; ++v) {
    auto row = src.row(v);
    std::copy(row.begin(), row.end(), dst.row(r.y + v).begin() + r.x);
  }
  return dst;
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(Errc::DimensionMismatch, std::to_string(a.width()) + "x" +
                                             std::to_string(a.height()) + " vs " +
                                             std::to_string(b.width()) + "x" +
                                             std::to_string(b.height()));
  }
  std::uint64_t sse = 0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int dr = int(pa[i].r) - int(pb[i].r);
    const int dg = int(pa[i].g) - int(pb[i].g);
    const int db = int(pa[i].b) - int(pb[i].b);
    sse += static_cast<std::uint64_t>(dr * dr + dg * dg + db * db);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sse) / (3.0 * static_cast<double>(pa.size()));
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace reveil
