#pragma once

#include <array>
#include <cstdint>

namespace supercap {

/// One 8x8 monochrome glyph. Row r, column c is set when bit c of rows[r] is
/// one (bit 0 is the leftmost column).
struct Glyph {
  std::array<std::uint8_t, 8> rows{};

  constexpr bool bit(int col, int row) const noexcept {
    return ((rows[static_cast<std::size_t>(row)] >> col) & 1U) != 0;
  }
};

/// Embedded 8x8 bitmap font covering printable ASCII (32-126). Every other
/// code point maps to a solid replacement block.
class GlyphFont {
 public:
  static constexpr char32_t kFirst = 32;
  static constexpr char32_t kLast = 126;
  static constexpr int kGlyphSize = 8;

  /// The font compiled into the library.
  static const GlyphFont& builtin();

  static constexpr bool covers(char32_t cp) noexcept { return cp >= kFirst && cp <= kLast; }

  const Glyph& glyph(char32_t cp) const noexcept {
    return covers(cp) ? glyphs_[cp - kFirst] : replacement_;
  }
  const Glyph& replacement() const noexcept { return replacement_; }

  GlyphFont(const std::array<Glyph, kLast - kFirst + 1>& glyphs, const Glyph& replacement)
      : glyphs_(glyphs), replacement_(replacement) {}

 private:
  std::array<Glyph, kLast - kFirst + 1> glyphs_;
  Glyph replacement_;
};

}  // namespace supercap
