#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "reveil/crc32.hpp"

using reveil::crc32;

namespace {

// Bit-at-a-time reference: no table, no shared code with the implementation.
std::uint32_t crc32_bitwise(const std::vector<std::uint8_t>& data) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::uint8_t byte : data) {
    crc ^= byte;
    for (int i = 0; i < 8; ++i) {
      const std::uint32_t lsb = crc & 1u;
      crc >>= 1;
      if (lsb) crc ^= 0xEDB88320u;
    }
  }
  return ~crc;
}

}  // namespace

TEST_CASE("crc32 check values") {
  CHECK(crc32(std::string_view("123456789")) == 0xCBF43926u);
  CHECK(crc32(std::string_view("")) == 0x00000000u);
  const std::vector<std::uint8_t> zero{0x00};
  CHECK(crc32(zero) == 0xD202EF8Du);
  CHECK(crc32_bitwise(zero) == 0xD202EF8Du);
}

TEST_CASE("crc32 agrees with the bitwise reference") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int n = 0; n < 300; ++n) {
    std::vector<std::uint8_t> data(static_cast<std::size_t>(n));
    for (auto& b : data) b = static_cast<std::uint8_t>(byte(rng));
    CHECK(crc32(data) == crc32_bitwise(data));
  }
}

TEST_CASE("incremental updates match one-shot") {
  const std::vector<std::uint8_t> data{'1', '2', '3', '4', '5', '6', '7', '8', '9'};
  reveil::Crc32 c;
  c.update(std::span(data).first(4));
  c.update(std::span(data).subspan(4));
  CHECK(c.value() == 0xCBF43926u);
}
