#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace reveil {

/// Reflected CRC-32 (polynomial 0xEDB88320, init and final xor 0xFFFFFFFF).
class Crc32 {
 public:
  void update(std::span<const std::uint8_t> data) noexcept;
  void update(std::uint8_t byte) noexcept;
  std::uint32_t value() const noexcept { return state_ ^ 0xFFFFFFFFu; }

 private:
  std::uint32_t state_ = 0xFFFFFFFFu;
};

std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;
std::uint32_t crc32(std::string_view text) noexcept;

}  // namespace reveil
