#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "supercap/composition_config.hpp"

namespace supercap {

/// Square region reserved for one word.
struct WordCell {
  int x = 0;
  int y = 0;
  int side = 0;

  friend constexpr bool operator==(const WordCell&, const WordCell&) = default;
};

struct GlyphPlacement {
  char32_t ch = 0;
  int x = 0;
  int y = 0;
  int size = 0;

  friend constexpr bool operator==(const GlyphPlacement&, const GlyphPlacement&) = default;
};

/// Squared English Word layout: N letters packed row-major into a
/// ceil(sqrt(N)) x ceil(sqrt(N)) grid of equal sub-cells.
struct WordLayout {
  std::string word;
  int grid_side = 0;
  std::vector<GlyphPlacement> placements;
};

/// ceil(sqrt(n_letters)), computed exactly in integers.
/// Throws InvalidArgument for zero.
int grid_side(std::size_t n_letters);

/// Letters are counted as Unicode code points of the UTF-8 input. Sub-cell
/// side is floor(cell.side / grid); leftover pixels stay blank on the right
/// and bottom of the cell.
///
/// Throws InvalidArgument for an empty word or a degenerate cell, and
/// LayoutInfeasible when the sub-cell would be narrower than one pixel.
WordLayout layout_word(std::string_view word, const WordCell& cell);

/// The cut_length word cells of the caption grid, in reading order.
std::vector<WordCell> caption_cells(const CompositionConfig& config);

}  // namespace supercap
