#include "reveil/stego.hpp"

#include <string>

#include "reveil/crc32.hpp"
#include "reveil/error.hpp"

namespace reveil::stego {

void invalid_bit_depth(int k) {
  throw Error(Errc::InvalidArgument, "bit depth must be in [1, 7], got " + std::to_string(k));
}

namespace {

class BitWriter {
 public:
  explicit BitWriter(HeaderBits& bits) : bits_(bits) {}

  void put(std::uint32_t value, int width) {
    for (int i = width - 1; i >= 0; --i) bits_[pos_++] = static_cast<std::uint8_t>((value >> i) & 1u);
  }

 private:
  HeaderBits& bits_;
  std::size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const HeaderBits& bits) : bits_(bits) {}

  std::uint32_t get(int width) {
    std::uint32_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (bits_[pos_++] & 1u);
    return v;
  }

 private:
  const HeaderBits& bits_;
  std::size_t pos_ = 0;
};

bool fits_u16(int v) { return v >= 0 && v <= 0xffff; }

std::uint8_t& channel(Rgb& px, int c) { return c == 0 ? px.r : (c == 1 ? px.g : px.b); }

}  // namespace

HeaderBits encode_header(const StegoHeader& h) {
  const Rect& r = h.roi;
  if (!fits_u16(r.x) || !fits_u16(r.y) || !fits_u16(r.w) || !fits_u16(r.h)) {
    throw Error(Errc::InvalidHeader, "roi fields must fit in 16 bits");
  }
  if (r.y < 1) throw Error(Errc::InvalidHeader, "roi.y must be >= 1 (row 0 holds the header)");
  if (r.w < 1 || r.h < 1) throw Error(Errc::InvalidHeader, "roi must be non-empty");

  HeaderBits bits{};
  BitWriter w(bits);
  for (std::uint8_t m : kMagic) w.put(m, 8);
  w.put(h.version, 8);
  w.put(static_cast<std::uint32_t>(h.k.value()), 8);
  w.put(static_cast<std::uint32_t>(r.x), 16);
  w.put(static_cast<std::uint32_t>(r.y), 16);
  w.put(static_cast<std::uint32_t>(r.w), 16);
  w.put(static_cast<std::uint32_t>(r.h), 16);
  w.put(h.crc, 32);
  return bits;
}

StegoHeader decode_header_bits(const HeaderBits& bits) {
  BitReader r(bits);
  for (std::uint8_t m : kMagic) {
    if (r.get(8) != m) throw Error(Errc::NotStego, "magic \"SDID\" not found in row 0");
  }
  const auto version = static_cast<std::uint8_t>(r.get(8));
  if (version != kVersion) {
    throw Error(Errc::UnsupportedVersion, "header version " + std::to_string(version));
  }
  const auto k = static_cast<int>(r.get(8));
  if (k < BitDepth::kMin || k > BitDepth::kMax) {
    throw Error(Errc::InvalidHeader, "bit depth " + std::to_string(k));
  }
  Rect roi;
  roi.x = static_cast<int>(r.get(16));
  roi.y = static_cast<int>(r.get(16));
  roi.w = static_cast<int>(r.get(16));
  roi.h = static_cast<int>(r.get(16));
  if (roi.w < 1 || roi.h < 1) throw Error(Errc::InvalidHeader, "empty roi");
  StegoHeader h{version, BitDepth(k), roi, 0};
  h.crc = r.get(32);
  return h;
}

std::uint32_t payload_crc(const ImageBuffer& stego, const Rect& roi, BitDepth k) {
  Crc32 crc;
  for (int y = roi.y; y < roi.bottom(); ++y) {
    for (int x = roi.x; x < roi.right(); ++x) {
      const Rgb& px = stego.at(x, y);
      crc.update(recover_secret_channel(px.r, k));
      crc.update(recover_secret_channel(px.g, k));
      crc.update(recover_secret_channel(px.b, k));
    }
  }
  return crc.value();
}

ImageBuffer embed(const ImageBuffer& carrier, const ImageBuffer& secret, const Rect& roi,
                  BitDepth k) {
  if (carrier.width() < kHeaderPixels) {
    throw Error(Errc::CarrierTooNarrow, "carrier is " + std::to_string(carrier.width()) +
                                            " px wide, header needs " +
                                            std::to_string(kHeaderPixels));
  }
  if (roi.y == 0) throw Error(Errc::RoiTouchesHeaderRow, "roi starts in row 0");
  validate_rect(roi, carrier.width(), carrier.height());
  if (secret.width() != roi.w || secret.height() != roi.h) {
    throw Error(Errc::DimensionMismatch, "secret is " + std::to_string(secret.width()) + "x" +
                                             std::to_string(secret.height()) + ", roi is " +
                                             std::to_string(roi.w) + "x" + std::to_string(roi.h));
  }

  ImageBuffer out = carrier;
  for (int v = 0; v < roi.h; ++v) {
    auto dst = out.row(roi.y + v);
    auto src = secret.row(v);
    for (int u = 0; u < roi.w; ++u) {
      Rgb& c = dst[static_cast<std::size_t>(roi.x + u)];
      const Rgb& s = src[static_cast<std::size_t>(u)];
      c = Rgb{combine_channel(c.r, s.r, k), combine_channel(c.g, s.g, k),
              combine_channel(c.b, s.b, k)};
    }
  }

  const StegoHeader header{kVersion, k, roi, payload_crc(out, roi, k)};
  const HeaderBits bits = encode_header(header);
  auto row0 = out.row(0);
  for (int i = 0; i < kHeaderBits; ++i) {
    std::uint8_t& ch = channel(row0[static_cast<std::size_t>(i / 3)], i % 3);
    ch = static_cast<std::uint8_t>((ch & 0xfe) | bits[static_cast<std::size_t>(i)]);
  }
  return out;
}

StegoHeader read_header(const ImageBuffer& stego) {
  if (stego.width() < kHeaderPixels) {
    throw Error(Errc::NotStego, "frame is narrower than the " + std::to_string(kHeaderPixels) +
                                    "-pixel header");
  }
  HeaderBits bits{};
  auto row0 = stego.row(0);
  for (int i = 0; i < kHeaderBits; ++i) {
    Rgb px = row0[static_cast<std::size_t>(i / 3)];
    bits[static_cast<std::size_t>(i)] = channel(px, i % 3) & 1u;
  }
  return decode_header_bits(bits);
}

Extraction extract(const ImageBuffer& stego) {
  const StegoHeader h = read_header(stego);
  const Rect& roi = h.roi;
  if (roi.y < 1 || static_cast<long long>(roi.x) + roi.w > stego.width() ||
      static_cast<long long>(roi.y) + roi.h > stego.height()) {
    throw Error(Errc::MalformedRoi, "roi (" + std::to_string(roi.x) + ", " + std::to_string(roi.y) +
                                        ", " + std::to_string(roi.w) + ", " +
                                        std::to_string(roi.h) + ") exceeds the frame");
  }
  const std::uint32_t actual = payload_crc(stego, roi, h.k);
  if (actual != h.crc) throw Error(Errc::CrcMismatch, "payload CRC does not match header");

  ImageBuffer secret(roi.w, roi.h);
  ImageBuffer carrier = stego;
  for (int v = 0; v < roi.h; ++v) {
    auto src = stego.row(roi.y + v);
    auto sec = secret.row(v);
    auto car = carrier.row(roi.y + v);
    for (int u = 0; u < roi.w; ++u) {
      const Rgb& px = src[static_cast<std::size_t>(roi.x + u)];
      sec[static_cast<std::size_t>(u)] =
          Rgb{recover_secret_channel(px.r, h.k), recover_secret_channel(px.g, h.k),
              recover_secret_channel(px.b, h.k)};
      car[static_cast<std::size_t>(roi.x + u)] =
          Rgb{recover_carrier_channel(px.r, h.k), recover_carrier_channel(px.g, h.k),
              recover_carrier_channel(px.b, h.k)};
    }
  }
  return {h, std::move(secret), std::move(carrier)};
}

}  // namespace reveil::stego
