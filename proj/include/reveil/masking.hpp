#pragma once

#include "reveil/image.hpp"

namespace reveil::masking {

struct MaskConfig {
  int block = 8;
  int blur_radius = 2;
  int blur_passes = 1;

  /// Throws Errc::InvalidArgument on block < 1 or negative radius/passes.
  void validate() const;
};

/// Replaces each block x block cell of r (anchored at r's corner, clipped at
/// its right/bottom edges) with the cell's per-channel mean, rounded half up.
ImageBuffer pixelize(ImageBuffer img, const Rect& r, int block);

/// Box blur confined to r: every pass sets each pixel to the rounded-half-up
/// mean of its (2*radius+1)^2 window, with out-of-rect samples clamped to r's
/// border.
ImageBuffer box_blur(ImageBuffer img, const Rect& r, int radius, int passes);

/// pixelize followed by box_blur with cfg's parameters.
ImageBuffer conceal(ImageBuffer img, const Rect& r, const MaskConfig& cfg);

}  // namespace reveil::masking
