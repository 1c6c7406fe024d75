#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "supercap/composition_config.hpp"
#include "supercap/font.hpp"
#include "supercap/image.hpp"
#include "supercap/sew_layout.hpp"

namespace supercap {

/// Non-fatal problems collected while rendering, e.g. characters drawn with
/// the replacement glyph.
struct RenderDiagnostics {
  std::vector<std::string> warnings;
};

/// Bilinear resize to exactly dst_w x dst_h (stretch, aspect not kept).
///
/// Sample centers follow the half-pixel convention and are clamped to the
/// source edges. All arithmetic is exact integer math on rational
/// coordinates; each channel is rounded half up. Same-size resize is an
/// exact copy.
Image resize_image(const Image& src, int dst_w, int dst_h);

/// Paints `word` into `cell` using its SEW layout. Each glyph is scaled to its
/// sub-cell by nearest neighbour; only set bits are painted. Characters the
/// font lacks get the replacement block and a warning.
void render_word(Canvas& canvas, std::string_view word, const WordCell& cell,
                 const GlyphFont& font, Rgb ink, RenderDiagnostics* diagnostics = nullptr);

/// Builds the SuperCaptioning image for `image` and the caption prefix
/// `partial_caption`. Byte-deterministic for equal inputs.
///
/// Throws InvalidArgument if the prefix exceeds cut_length or contains an
/// empty token.
Canvas compose(const Image& image, const std::vector<std::string>& partial_caption,
               const CompositionConfig& config = {},
               const GlyphFont& font = GlyphFont::builtin(),
               RenderDiagnostics* diagnostics = nullptr);

}  // namespace supercap
