#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "supercap/errors.hpp"
#include "supercap/sew_layout.hpp"

namespace supercap {
namespace {

// Smallest g with g*g >= n, by enumeration.
int grid_side_by_enumeration(std::size_t n) {
  int g = 1;
  while (static_cast<std::size_t>(g) * static_cast<std::size_t>(g) < n) ++g;
  return g;
}

bool overlaps(const GlyphPlacement& a, const GlyphPlacement& b) {
  return a.x < b.x + b.size && b.x < a.x + a.size && a.y < b.y + b.size && b.y < a.y + a.size;
}

TEST(GridSide, Examples) {
  EXPECT_EQ(grid_side(5), 3);  // "child"
  EXPECT_EQ(grid_side(1), 1);
  EXPECT_EQ(grid_side(9), 3);
  EXPECT_EQ(grid_side(10), 4);
}

TEST(GridSide, ZeroLettersRejected) { EXPECT_THROW(grid_side(0), InvalidArgument); }

TEST(GridSide, MatchesEnumerationUpTo400) {
  for (std::size_t n = 1; n <= 400; ++n) {
    const int g = grid_side(n);
    ASSERT_EQ(g, grid_side_by_enumeration(n)) << "n=" << n;
    ASSERT_GE(static_cast<std::size_t>(g * g), n);
    ASSERT_LT(static_cast<std::size_t>((g - 1) * (g - 1)), n);
  }
}

TEST(GridSide, LargeCountsStayExact) {
  for (std::size_t n : {std::size_t{999'999}, std::size_t{1'000'000}, std::size_t{1'000'001},
                        std::size_t{4'294'836'225}, std::size_t{4'294'836'226}}) {
    EXPECT_EQ(grid_side(n), grid_side_by_enumeration(n)) << n;
  }
}

TEST(LayoutWord, ChildInDefaultCell) {
  const WordLayout l = layout_word("child", {0, 0, 31});
  EXPECT_EQ(l.grid_side, 3);
  ASSERT_EQ(l.placements.size(), 5u);
  const std::vector<GlyphPlacement> expected = {
      {U'c', 0, 0, 10}, {U'h', 10, 0, 10}, {U'i', 20, 0, 10}, {U'l', 0, 10, 10}, {U'd', 10, 10, 10}};
  EXPECT_EQ(l.placements, expected);
}

TEST(LayoutWord, SingleLetterFillsCell) {
  const WordLayout l = layout_word("A", {3, 150, 31});
  EXPECT_EQ(l.grid_side, 1);
  ASSERT_EQ(l.placements.size(), 1u);
  EXPECT_EQ(l.placements[0], (GlyphPlacement{U'A', 3, 150, 31}));
}

TEST(LayoutWord, TwoLetters) {
  const WordLayout l = layout_word("on", {0, 0, 31});
  EXPECT_EQ(l.grid_side, 2);
  ASSERT_EQ(l.placements.size(), 2u);
  EXPECT_EQ(l.placements[0], (GlyphPlacement{U'o', 0, 0, 15}));
  EXPECT_EQ(l.placements[1], (GlyphPlacement{U'n', 15, 0, 15}));
}

TEST(LayoutWord, OffsetsFollowCellOrigin) {
  const WordLayout l = layout_word("child", {189, 181, 31});
  EXPECT_EQ(l.placements[4], (GlyphPlacement{U'd', 199, 191, 10}));
}

TEST(LayoutWord, CountsCodePointsNotBytes) {
  const WordLayout l = layout_word("caf\xC3\xA9", {0, 0, 31});  // "café"
  EXPECT_EQ(l.grid_side, 2);
  ASSERT_EQ(l.placements.size(), 4u);
  EXPECT_EQ(l.placements[3].ch, U'é');
}

TEST(LayoutWord, Errors) {
  EXPECT_THROW(layout_word("", {0, 0, 31}), InvalidArgument);
  EXPECT_THROW(layout_word("a", {0, 0, 0}), InvalidArgument);
  // 32 letters need a 6x6 grid; a 5 px cell leaves no pixel per glyph.
  try {
    layout_word("abcdefghijklmnopqrstuvwxyzabcdef", {0, 0, 5});
    FAIL() << "expected LayoutInfeasible";
  } catch (const LayoutInfeasible& e) {
    EXPECT_NE(std::string(e.what()).find("abcdefghijklmnopqrstuvwxyzabcdef"), std::string::npos);
  }
  EXPECT_NO_THROW(layout_word("abcdefghijklmnopqrstuvwxyzabcdef", {0, 0, 6}));
}

TEST(LayoutWord, RandomWordsArePackedDisjointAndContained) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> len(1, 60);
  std::uniform_int_distribution<int> letter('!', '~');
  std::uniform_int_distribution<int> side(1, 80);
  std::uniform_int_distribution<int> origin(0, 500);
  for (int iter = 0; iter < 2000; ++iter) {
    std::string word(static_cast<std::size_t>(len(rng)), ' ');
    for (char& c : word) c = static_cast<char>(letter(rng));
    const WordCell cell{origin(rng), origin(rng), side(rng)};
    const int g = grid_side(word.size());
    if (cell.side < g) {
      EXPECT_THROW(layout_word(word, cell), LayoutInfeasible);
      continue;
    }
    const WordLayout l = layout_word(word, cell);
    ASSERT_EQ(l.placements.size(), word.size());
    ASSERT_EQ(l.grid_side, g);
    EXPECT_EQ(l.word, word);
    for (std::size_t i = 0; i < l.placements.size(); ++i) {
      const GlyphPlacement& p = l.placements[i];
      ASSERT_EQ(p.ch, static_cast<char32_t>(word[i]));
      ASSERT_GE(p.size, 1);
      ASSERT_EQ(p.size, cell.side / g);
      ASSERT_EQ(p.x, cell.x + static_cast<int>(i % g) * p.size);
      ASSERT_EQ(p.y, cell.y + static_cast<int>(i / g) * p.size);
      ASSERT_GE(p.x, cell.x);
      ASSERT_GE(p.y, cell.y);
      ASSERT_LE(p.x + p.size, cell.x + cell.side);
      ASSERT_LE(p.y + p.size, cell.y + cell.side);
      for (std::size_t j = 0; j < i; ++j) ASSERT_FALSE(overlaps(p, l.placements[j]));
    }
    // Pure: same inputs, same output.
    EXPECT_EQ(layout_word(word, cell).placements, l.placements);
  }
}

TEST(CaptionCells, DefaultGeometry) {
  const std::vector<WordCell> cells = caption_cells(CompositionConfig{});
  ASSERT_EQ(cells.size(), 14u);
  EXPECT_EQ(cells[0], (WordCell{3, 150, 31}));
  EXPECT_EQ(cells[6], (WordCell{3 + 6 * 31, 150, 31}));
  EXPECT_EQ(cells[7], (WordCell{3, 181, 31}));
  EXPECT_EQ(cells[13], (WordCell{189, 181, 31}));
}

TEST(CaptionCells, DisjointInsideCanvasAndBelowImage) {
  const CompositionConfig config;
  const std::vector<WordCell> cells = caption_cells(config);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const WordCell& a = cells[i];
    EXPECT_GE(a.y, config.image_region_h);
    EXPECT_GE(a.x, 0);
    EXPECT_LE(a.x + a.side, config.canvas_w);
    EXPECT_LE(a.y + a.side, config.canvas_h);
    for (std::size_t j = 0; j < i; ++j) {
      const WordCell& b = cells[j];
      const bool disjoint = a.x + a.side <= b.x || b.x + b.side <= a.x || a.y + a.side <= b.y ||
                            b.y + b.side <= a.y;
      EXPECT_TRUE(disjoint) << i << " vs " << j;
    }
  }
}

TEST(CompositionConfig, RejectsInconsistentGeometry) {
  EXPECT_NO_THROW(CompositionConfig{}.validate());
  CompositionConfig c;
  c.cut_length = 13;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.left_margin = 8;  // 8 + 217 > 224
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.image_region_h = 163;  // 163 + 62 > 224
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.cell_side = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(caption_cells(c), InvalidArgument);
}

}  // namespace
}  // namespace supercap
