#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace reveil {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Integer pixel-aligned region. (x, y) is the top-left corner.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  int right() const noexcept { return x + w; }
  int bottom() const noexcept { return y + h; }
  bool contains(int px, int py) const noexcept {
    return px >= x && px < x + w && py >= y && py < y + h;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// 8-bit RGB raster, row-major, top row first.
class ImageBuffer {
 public:
  /// Throws Errc::InvalidArgument unless width >= 1 and height >= 1.
  ImageBuffer(int width, int height, Rgb fill = {});
  ImageBuffer(int width, int height, std::vector<Rgb> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  Rgb& at(int x, int y) noexcept { return pixels_[index(x, y)]; }
  const Rgb& at(int x, int y) const noexcept { return pixels_[index(x, y)]; }

  std::span<Rgb> row(int y) noexcept {
    return {pixels_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<const Rgb> row(int y) const noexcept {
    return {pixels_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<Rgb> pixels() noexcept { return pixels_; }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }

  Rect bounds() const noexcept { return {0, 0, width_, height_}; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

/// Throws Errc::RectOutOfBounds unless r is non-empty and lies inside a
/// width x height image.
void validate_rect(const Rect& r, int width, int height);

ImageBuffer crop(const ImageBuffer& img, const Rect& r);

/// Returns dst with the pixels of r replaced by src.
ImageBuffer blit(ImageBuffer dst, const Rect& r, const ImageBuffer& src);

/// Peak signal-to-noise ratio in dB, 10*log10(255^2 / MSE) with MSE averaged
/// over 3*width*height channel samples. Identical images give +infinity,
/// never a large finite number.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace reveil
