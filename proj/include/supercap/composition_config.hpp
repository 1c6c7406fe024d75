#pragma once

#include "supercap/image.hpp"

namespace supercap {

/// Canvas geometry. Defaults reproduce the published setup: a 224x224
/// canvas, the photo stretched into the top 224x150 band, and a 7x2 grid of
/// 31 px word cells below it, one cell per caption word up to the cut-length.
struct CompositionConfig {
  int canvas_w = 224;
  int canvas_h = 224;
  int image_region_w = 224;
  int image_region_h = 150;
  int cell_side = 31;
  int words_per_row = 7;
  int rows = 2;
  int left_margin = 3;
  int cut_length = 14;
  Rgb background = kWhite;
  Rgb ink = kBlack;

  /// Top of the caption grid, directly under the image region.
  int text_region_top() const noexcept { return image_region_h; }

  /// Throws InvalidArgument when the geometry is inconsistent.
  void validate() const;
};

}  // namespace supercap
