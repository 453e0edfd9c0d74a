#include "reveil/crc32.hpp"

#include <array>

namespace reveil {

namespace {

constexpr std::array<std::uint32_t, 256> make_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t n = 0; n < 256; ++n) {
    std::uint32_t c = n;
    for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[n] = c;
  }
  return table;
}

constexpr auto kTable = make_table();

}  // namespace

void Crc32::update(std::uint8_t byte) noexcept {
  state_ = kTable[(state_ ^ byte) & 0xffu] ^ (state_ >> 8);
}

void Crc32::update(std::span<const std::uint8_t> data) noexcept {
  for (std::uint8_t b : data) update(b);
}

std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept {
  Crc32 crc;
  crc.update(data);
  return crc.value();
}

std::uint32_t crc32(std::string_view text) noexcept {
  Crc32 crc;
  for (char c : text) crc.update(static_cast<std::uint8_t>(c));
  return crc.value();
}

}  // namespace reveil
