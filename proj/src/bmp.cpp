#include "reveil/bmp.hpp"

#include <fstream>
#include <iterator>
#include <string>

#include "reveil/error.hpp"

namespace reveil::bmp {

namespace {

// Both resolution fields are written as 2835 px/m (72 dpi).
constexpr std::int32_t kPixelsPerMeter = 2835;

std::uint16_t le16(std::span<const std::uint8_t> p, std::size_t at) {
  return static_cast<std::uint16_t>(p[at] | (p[at + 1] << 8));
}

std::uint32_t le32(std::span<const std::uint8_t> p, std::size_t at) {
  return static_cast<std::uint32_t>(p[at]) | (static_cast<std::uint32_t>(p[at + 1]) << 8) |
         (static_cast<std::uint32_t>(p[at + 2]) << 16) |
         (static_cast<std::uint32_t>(p[at + 3]) << 24);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

ImageBuffer decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'B' || bytes[1] != 'M') {
    throw Error(Errc::BadMagic, "file does not start with \"BM\"");
  }
  if (bytes.size() < kPixelOffset) {
    throw Error(Errc::Truncated, "headers need 54 bytes, file has " + std::to_string(bytes.size()));
  }
  const std::uint32_t data_offset = le32(bytes, 10);
  const std::uint32_t info_size = le32(bytes, 14);
  const auto width = static_cast<std::int32_t>(le32(bytes, 18));
  const auto height = static_cast<std::int32_t>(le32(bytes, 22));
  const std::uint16_t planes = le16(bytes, 26);
  const std::uint16_t bpp = le16(bytes, 28);
  const std::uint32_t compression = le32(bytes, 30);

  if (info_size != kInfoHeaderSize) {
    throw Error(Errc::UnsupportedFormat, "info header size " + std::to_string(info_size));
  }
  if (bpp != 24) throw Error(Errc::UnsupportedFormat, "bit depth " + std::to_string(bpp));
  if (compression != 0) {
    throw Error(Errc::UnsupportedFormat, "compression " + std::to_string(compression));
  }
  if (planes != 1) throw Error(Errc::UnsupportedFormat, "planes " + std::to_string(planes));
  if (width <= 0 || height <= 0) {
    // Negative height (top-down) is deliberately not accepted.
    throw Error(Errc::UnsupportedFormat,
                "dimensions " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (data_offset < kPixelOffset) {
    throw Error(Errc::UnsupportedFormat, "pixel data offset " + std::to_string(data_offset));
  }

  const std::size_t stride = row_stride(width);
  const std::size_t needed = stride * static_cast<std::size_t>(height);
  if (data_offset > bytes.size() || bytes.size() - data_offset < needed) {
    throw Error(Errc::Truncated, "pixel data needs " + std::to_string(needed) + " bytes");
  }

  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y) {
    // Stored rows run bottom-up.
    const std::size_t base = data_offset + static_cast<std::size_t>(height - 1 - y) * stride;
    auto row = img.row(y);
    for (int x = 0; x < width; ++x) {
      const std::size_t p = base + static_cast<std::size_t>(x) * 3;
      row[static_cast<std::size_t>(x)] = Rgb{bytes[p + 2], bytes[p + 1], bytes[p]};
    }
  }
  return img;
}

std::vector<std::uint8_t> encode(const ImageBuffer& img) {
  const std::size_t stride = row_stride(img.width());
  const std::size_t data_size = stride * static_cast<std::size_t>(img.height());
  std::vector<std::uint8_t> out;
  out.reserve(kPixelOffset + data_size);

  out.push_back('B');
  out.push_back('M');
  put32(out, static_cast<std::uint32_t>(kPixelOffset + data_size));
  put32(out, 0);  // reserved
  put32(out, static_cast<std::uint32_t>(kPixelOffset));

  put32(out, static_cast<std::uint32_t>(kInfoHeaderSize));
  put32(out, static_cast<std::uint32_t>(img.width()));
  put32(out, static_cast<std::uint32_t>(img.height()));
  put16(out, 1);
  put16(out, 24);
  put32(out, 0);
  put32(out, static_cast<std::uint32_t>(data_size));
  put32(out, static_cast<std::uint32_t>(kPixelsPerMeter));
  put32(out, static_cast<std::uint32_t>(kPixelsPerMeter));
  put32(out, 0);
  put32(out, 0);

  const std::size_t pad = stride - static_cast<std::size_t>(img.width()) * 3;
  for (int y = img.height() - 1; y >= 0; --y) {
    for (const Rgb& px : img.row(y)) {
      out.push_back(px.b);
      out.push_back(px.g);
      out.push_back(px.r);
    }
    out.insert(out.end(), pad, 0);
  }
  return out;
}

ImageBuffer read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::IoError, "read failed: " + path.string());
  return decode(bytes);
}

void write_file(const std::filesystem::path& path, const ImageBuffer& img) {
  const auto bytes = encode(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

}  // namespace reveil::bmp
