#pragma once

#include <array>
#include <cstdint>

#include "reveil/image.hpp"

// LSB insertion. A stego frame carries a 144-bit self-describing header in
// the lowest bit of each channel of the first 48 pixels of row 0 (pixel order
// left to right, channels R, G, B), followed by the payload, which sits
// spatially aligned inside the ROI at k bits per channel.
//
// Header layout, every field MSB first:
//   magic "SDID" (32) | version (8) | k (8) | roi x, y, w, h (16 each) | crc (32)
namespace reveil::stego {

[[noreturn]] void invalid_bit_depth(int k);

/// Number of least-significant carrier bits replaced per channel.
class BitDepth {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 7;

  /// Throws Errc::InvalidArgument outside [1, 7].
  constexpr explicit BitDepth(int k) : k_(k) {
    if (k < kMin || k > kMax) invalid_bit_depth(k);
  }

  constexpr int value() const noexcept { return k_; }
  /// Mask of the k low bits.
  constexpr std::uint8_t low_mask() const noexcept { return static_cast<std::uint8_t>((1u << k_) - 1u); }

  friend bool operator==(const BitDepth&, const BitDepth&) = default;

 private:
  int k_;
};

/// Keeps the carrier's top 8-k bits and stores the secret's top k bits below them.
constexpr std::uint8_t combine_channel(std::uint8_t carrier, std::uint8_t secret,
                                       BitDepth k) noexcept {
  return static_cast<std::uint8_t>((carrier & ~k.low_mask()) | (secret >> (8 - k.value())));
}

/// Secret estimate: stored bits moved back to the top, the rest zero-filled.
constexpr std::uint8_t recover_secret_channel(std::uint8_t stego, BitDepth k) noexcept {
  return static_cast<std::uint8_t>((stego & k.low_mask()) << (8 - k.value()));
}

/// Carrier estimate: payload bits zeroed.
constexpr std::uint8_t recover_carrier_channel(std::uint8_t stego, BitDepth k) noexcept {
  return static_cast<std::uint8_t>(stego & ~k.low_mask());
}

inline constexpr std::array<std::uint8_t, 4> kMagic = {'S', 'D', 'I', 'D'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr int kHeaderBits = 144;
inline constexpr int kHeaderPixels = kHeaderBits / 3;

struct StegoHeader {
  std::uint8_t version = kVersion;
  BitDepth k{4};
  Rect roi;
  std::uint32_t crc = 0;

  friend bool operator==(const StegoHeader&, const StegoHeader&) = default;
};

/// One bit per element, values 0 or 1.
using HeaderBits = std::array<std::uint8_t, kHeaderBits>;

/// Errors: InvalidHeader when roi.y < 1, any roi field is outside 16 bits, or
/// w/h is zero.
HeaderBits encode_header(const StegoHeader& h);

/// Errors: NotStego (magic), UnsupportedVersion, InvalidHeader (k outside
/// [1, 7] or empty roi).
StegoHeader decode_header_bits(const HeaderBits& bits);

/// Errors: CarrierTooNarrow, RoiTouchesHeaderRow, RectOutOfBounds,
/// DimensionMismatch.
ImageBuffer embed(const ImageBuffer& carrier, const ImageBuffer& secret, const Rect& roi,
                  BitDepth k);

struct Extraction {
  StegoHeader header;
  ImageBuffer secret;   // roi-sized, low bits zero-filled
  ImageBuffer carrier;  // full frame, low k bits zeroed inside roi
};

/// Errors: NotStego (also for frames narrower than the header), UnsupportedVersion,
/// InvalidHeader, MalformedRoi, CrcMismatch.
Extraction extract(const ImageBuffer& stego);

/// Reads only the header from row 0.
StegoHeader read_header(const ImageBuffer& stego);

/// CRC over the recoverable payload inside h.roi (row-major, R G B).
std::uint32_t payload_crc(const ImageBuffer& stego, const Rect& roi, BitDepth k);

}  // namespace reveil::stego
