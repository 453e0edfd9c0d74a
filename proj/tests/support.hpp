#pragma once

#include <cstdint>
#include <random>

#include "reveil/image.hpp"

namespace reveil::test {

inline ImageBuffer random_image(std::mt19937& rng, int width, int height) {
  std::uniform_int_distribution<int> byte(0, 255);
  ImageBuffer img(width, height);
  for (Rgb& p : img.pixels()) {
    p = Rgb{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
            static_cast<std::uint8_t>(byte(rng))};
  }
  return img;
}

inline Rect random_rect(std::mt19937& rng, int width, int height, int min_y = 0) {
  std::uniform_int_distribution<int> xd(0, width - 1);
  std::uniform_int_distribution<int> yd(min_y, height - 1);
  const int x = xd(rng);
  const int y = yd(rng);
  std::uniform_int_distribution<int> wd(1, width - x);
  std::uniform_int_distribution<int> hd(1, height - y);
  return Rect{x, y, wd(rng), hd(rng)};
}

inline int channel(const Rgb& p, int c) { return c == 0 ? p.r : (c == 1 ? p.g : p.b); }

}  // namespace reveil::test
