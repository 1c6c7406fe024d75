#include "supercap/sew_layout.hpp"

#include <cmath>
#include <string>

#include "supercap/errors.hpp"
#include "supercap/utf8.hpp"

namespace supercap {

void CompositionConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("composition config: " + what); };
  if (canvas_w <= 0 || canvas_h <= 0) fail("canvas dimensions must be positive");
  if (image_region_w <= 0 || image_region_h <= 0) fail("image region must be non-empty");
  if (image_region_w > canvas_w || image_region_h > canvas_h) fail("image region exceeds the canvas");
  if (cell_side <= 0) fail("cell_side must be positive");
  if (words_per_row <= 0 || rows <= 0) fail("caption grid must be non-empty");
  if (left_margin < 0) fail("left_margin must be non-negative");
  if (words_per_row * rows != cut_length) fail("words_per_row * rows must equal cut_length");
  if (left_margin + words_per_row * cell_side > canvas_w) fail("caption grid is wider than the canvas");
  if (image_region_h + rows * cell_side > canvas_h) fail("caption grid does not fit below the image");
}

int grid_side(std::size_t n_letters) {
  if (n_letters == 0) throw InvalidArgument("grid_side: a word needs at least one letter");
  auto g = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_letters)));
  while (g * g > n_letters) --g;
  while ((g + 1) * (g + 1) <= n_letters) ++g;
  if (g * g < n_letters) ++g;
  return static_cast<int>(g);
}

WordLayout layout_word(std::string_view word, const WordCell& cell) {
  if (word.empty()) throw InvalidArgument("layout_word: empty word");
  if (cell.side <= 0 || cell.x < 0 || cell.y < 0) {
    throw InvalidArgument("layout_word: invalid cell for '" + std::string(word) + "'");
  }
  const std::u32string letters = utf8::decode(word);
  const int g = grid_side(letters.size());
  const int sub = cell.side / g;
  if (sub == 0) {
    throw LayoutInfeasible("word '" + std::string(word) + "' has " +
                           std::to_string(letters.size()) + " letters and needs a cell of at least " +
                           std::to_string(g) + " px, got " + std::to_string(cell.side));
  }

  WordLayout layout{std::string(word), g, {}};
  layout.placements.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const int col = static_cast<int>(i % static_cast<std::size_t>(g));
    const int row = static_cast<int>(i / static_cast<std::size_t>(g));
    layout.placements.push_back({letters[i], cell.x + col * sub, cell.y + row * sub, sub});
  }
  return layout;
}

std::vector<WordCell> caption_cells(const CompositionConfig& config) {
  config.validate();
  std::vector<WordCell> cells;
  cells.reserve(static_cast<std::size_t>(config.cut_length));
  for (int i = 0; i < config.cut_length; ++i) {
    cells.push_back({config.left_margin + (i % config.words_per_row) * config.cell_side,
                     config.text_region_top() + (i / config.words_per_row) * config.cell_side,
                     config.cell_side});
  }
  return cells;
}

}  // namespace supercap
