#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "reveil/image.hpp"

// Narrow, bit-exact codec for 24-bit uncompressed Windows bitmaps
// (BITMAPFILEHEADER + 40-byte BITMAPINFOHEADER, bottom-up, BGR, rows padded
// to 4 bytes). Anything else is rejected.
namespace reveil::bmp {

inline constexpr std::size_t kFileHeaderSize = 14;
inline constexpr std::size_t kInfoHeaderSize = 40;
inline constexpr std::size_t kPixelOffset = kFileHeaderSize + kInfoHeaderSize;

/// Bytes per stored row: 3*width rounded up to a multiple of 4.
constexpr std::size_t row_stride(int width) noexcept {
  return (static_cast<std::size_t>(width) * 3 + 3) / 4 * 4;
}

/// Errors: BadMagic, UnsupportedFormat, Truncated.
ImageBuffer decode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode(const ImageBuffer& img);

/// File helpers; I/O failures raise Errc::IoError.
ImageBuffer read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const ImageBuffer& img);

}  // namespace reveil::bmp
