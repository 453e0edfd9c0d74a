#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "reveil/bmp.hpp"
#include "reveil/error.hpp"
#include "support.hpp"

using namespace reveil;

namespace {

// Hand-laid BMP: 14-byte file header, 40-byte info header, then rows.
std::vector<std::uint8_t> hand_bmp(std::uint32_t w, std::uint32_t h,
                                   const std::vector<std::uint8_t>& data) {
  const std::uint32_t size = 54 + static_cast<std::uint32_t>(data.size());
  auto le32 = [](std::uint32_t v) {
    return std::vector<std::uint8_t>{std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                                     std::uint8_t(v >> 24)};
  };
  std::vector<std::uint8_t> out = {'B', 'M'};
  auto append = [&out](const std::vector<std::uint8_t>& v) { out.insert(out.end(), v.begin(), v.end()); };
  append(le32(size));
  append({0, 0, 0, 0});
  append(le32(54));
  append(le32(40));
  append(le32(w));
  append(le32(h));
  append({1, 0, 24, 0});  // planes, bpp
  append(le32(0));        // BI_RGB
  append(le32(static_cast<std::uint32_t>(data.size())));
  append(le32(2835));
  append(le32(2835));
  append(le32(0));
  append(le32(0));
  append(data);
  return out;
}

Errc decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    bmp::decode(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("decode should have failed");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("decode hand-encoded 1x1") {
  // On disk B=255, G=0, R=0, one pad byte.
  const auto bytes = hand_bmp(1, 1, {0xff, 0x00, 0x00, 0x00});
  REQUIRE(bytes.size() == 58);
  const ImageBuffer img = bmp::decode(bytes);
  CHECK(img.width() == 1);
  CHECK(img.height() == 1);
  CHECK(img.at(0, 0) == Rgb{0, 0, 255});
  // Our encoder produces exactly these bytes.
  CHECK(bmp::encode(img) == bytes);
}

TEST_CASE("decode hand-encoded 2x2 is top row first") {
  // Bottom row stored first: (1,2,3) (4,5,6) then top row (7,8,9) (10,11,12),
  // each row 6 data bytes + 2 pad bytes, all BGR.
  const auto bytes = hand_bmp(2, 2, {3, 2, 1, 6, 5, 4, 0, 0, 9, 8, 7, 12, 11, 10, 0, 0});
  const ImageBuffer img = bmp::decode(bytes);
  CHECK(img.at(0, 0) == Rgb{7, 8, 9});
  CHECK(img.at(1, 0) == Rgb{10, 11, 12});
  CHECK(img.at(0, 1) == Rgb{1, 2, 3});
  CHECK(img.at(1, 1) == Rgb{4, 5, 6});
  CHECK(bmp::encode(img) == bytes);
}

TEST_CASE("encoded layout") {
  CHECK(bmp::encode(ImageBuffer(1, 1, Rgb{0, 0, 255})).size() == 58);
  CHECK(bmp::row_stride(3) == 12);
  CHECK(bmp::row_stride(4) == 12);
  CHECK(bmp::row_stride(1) == 4);
  CHECK(bmp::encode(ImageBuffer(3, 2)).size() == 54 + 2 * 12);
}

TEST_CASE("decode errors") {
  CHECK(decode_error({'P', 'N', 'G', 0}) == Errc::BadMagic);
  CHECK(decode_error({}) == Errc::BadMagic);
  CHECK(decode_error({'B', 'M', 0, 0}) == Errc::Truncated);

  auto bytes = hand_bmp(2, 2, std::vector<std::uint8_t>(16, 0));
  auto truncated = bytes;
  truncated.pop_back();
  CHECK(decode_error(truncated) == Errc::Truncated);

  auto bpp32 = bytes;
  bpp32[28] = 32;
  CHECK(decode_error(bpp32) == Errc::UnsupportedFormat);

  auto rle = bytes;
  rle[30] = 1;
  CHECK(decode_error(rle) == Errc::UnsupportedFormat);

  auto v5 = bytes;
  v5[14] = 124;
  CHECK(decode_error(v5) == Errc::UnsupportedFormat);
}

TEST_CASE("round trip covers every stride padding case") {
  std::mt19937 rng(11);
  for (int w = 1; w <= 8; ++w) {
    for (int h = 1; h <= 4; ++h) {
      const ImageBuffer img = test::random_image(rng, w, h);
      const auto bytes = bmp::encode(img);
      CHECK(bytes.size() == 54 + bmp::row_stride(w) * static_cast<std::size_t>(h));
      CHECK(bmp::decode(bytes) == img);
      CHECK(bmp::encode(bmp::decode(bytes)) == bytes);
    }
  }
}

TEST_CASE("fixture written by an independent encoder decodes") {
  const ImageBuffer img = bmp::read_file(REVEIL_FIXTURE_DIR "/carrier_640x480.bmp");
  CHECK(img.width() == 640);
  CHECK(img.height() == 480);
}

TEST_CASE("missing file is an I/O error") {
  try {
    bmp::read_file("/nonexistent/frame.bmp");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoError);
  }
}
