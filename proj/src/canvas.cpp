#include "supercap/canvas.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <string>

#include "supercap/errors.hpp"
#include "supercap/log.hpp"

namespace supercap {

namespace {

// Source sample position along one axis for every destination index, as an
// exact fraction: pos = (2*d + 1) * src / (2 * dst) - 1/2, clamped to
// [0, src - 1]. Stored as integer part plus numerator over `den`.
struct AxisTap {
  int lo = 0;
  int hi = 0;
  std::int64_t frac = 0;  // weight of `hi`, in units of 1/den
};

std::vector<AxisTap> axis_taps(int src, int dst, std::int64_t den) {
  std::vector<AxisTap> taps(static_cast<std::size_t>(dst));
  const std::int64_t max_num = den * (src - 1);
  for (int d = 0; d < dst; ++d) {
    std::int64_t num = (2 * static_cast<std::int64_t>(d) + 1) * src - dst;
    num = std::clamp<std::int64_t>(num, 0, max_num);
    AxisTap& t = taps[static_cast<std::size_t>(d)];
    t.lo = static_cast<int>(num / den);
    t.frac = num % den;
    t.hi = std::min(t.lo + 1, src - 1);
  }
  return taps;
}

std::string codepoint_name(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

}  // namespace

Image resize_image(const Image& src, int dst_w, int dst_h) {
  if (src.empty()) throw InvalidArgument("resize_image: empty source image");
  if (dst_w <= 0 || dst_h <= 0) throw InvalidArgument("resize_image: target size must be positive");
  if (src.width() == dst_w && src.height() == dst_h) return src;

  const std::int64_t den_x = 2 * static_cast<std::int64_t>(dst_w);
  const std::int64_t den_y = 2 * static_cast<std::int64_t>(dst_h);
  const std::vector<AxisTap> xs = axis_taps(src.width(), dst_w, den_x);
  const std::vector<AxisTap> ys = axis_taps(src.height(), dst_h, den_y);
  const std::int64_t total = den_x * den_y;

  Image out(dst_w, dst_h);
  const auto in = src.bytes();
  auto dst = out.bytes();
  const auto stride = static_cast<std::size_t>(src.width()) * 3;
  for (int y = 0; y < dst_h; ++y) {
    const AxisTap& ty = ys[static_cast<std::size_t>(y)];
    const std::int64_t wy1 = ty.frac;
    const std::int64_t wy0 = den_y - wy1;
    const std::uint8_t* row0 = in.data() + static_cast<std::size_t>(ty.lo) * stride;
    const std::uint8_t* row1 = in.data() + static_cast<std::size_t>(ty.hi) * stride;
    for (int x = 0; x < dst_w; ++x) {
      const AxisTap& tx = xs[static_cast<std::size_t>(x)];
      const std::int64_t wx1 = tx.frac;
      const std::int64_t wx0 = den_x - wx1;
      const std::size_t c0 = static_cast<std::size_t>(tx.lo) * 3;
      const std::size_t c1 = static_cast<std::size_t>(tx.hi) * 3;
      std::uint8_t* o = dst.data() + (static_cast<std::size_t>(y) * dst_w + x) * 3;
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const std::int64_t top = row0[c0 + ch] * wx0 + row0[c1 + ch] * wx1;
        const std::int64_t bottom = row1[c0 + ch] * wx0 + row1[c1 + ch] * wx1;
        const std::int64_t acc = top * wy0 + bottom * wy1;
        o[ch] = static_cast<std::uint8_t>((2 * acc + total) / (2 * total));
      }
    }
  }
  return out;
}

void render_word(Canvas& canvas, std::string_view word, const WordCell& cell,
                 const GlyphFont& font, Rgb ink, RenderDiagnostics* diagnostics) {
  if (cell.x + cell.side > canvas.width() || cell.y + cell.side > canvas.height()) {
    throw InvalidArgument("render_word: cell lies outside the canvas");
  }
  const WordLayout layout = layout_word(word, cell);
  for (const GlyphPlacement& p : layout.placements) {
    if (!GlyphFont::covers(p.ch)) {
      std::string msg = "word '" + std::string(word) + "': no glyph for " +
                        codepoint_name(p.ch) + ", drew replacement block";
      log().warn("{}", msg);
      if (diagnostics != nullptr) diagnostics->warnings.push_back(std::move(msg));
    }
    const Glyph& glyph = font.glyph(p.ch);
    for (int py = 0; py < p.size; ++py) {
      const int row = py * GlyphFont::kGlyphSize / p.size;
      for (int px = 0; px < p.size; ++px) {
        const int col = px * GlyphFont::kGlyphSize / p.size;
        if (glyph.bit(col, row)) canvas.set(p.x + px, p.y + py, ink);
      }
    }
  }
}

Canvas compose(const Image& image, const std::vector<std::string>& partial_caption,
               const CompositionConfig& config, const GlyphFont& font,
               RenderDiagnostics* diagnostics) {
  config.validate();
  if (partial_caption.size() > static_cast<std::size_t>(config.cut_length)) {
    throw InvalidArgument("compose: caption has " + std::to_string(partial_caption.size()) +
                          " tokens, cut-length is " + std::to_string(config.cut_length));
  }
  for (const std::string& token : partial_caption) {
    if (token.empty()) throw InvalidArgument("compose: empty token in caption");
  }

  Canvas canvas(config.canvas_w, config.canvas_h, config.background);
  canvas.blit(resize_image(image, config.image_region_w, config.image_region_h), 0, 0);
  const std::vector<WordCell> cells = caption_cells(config);
  for (std::size_t i = 0; i < partial_caption.size(); ++i) {
    render_word(canvas, partial_caption[i], cells[i], font, config.ink, diagnostics);
  }
  return canvas;
}

}  // namespace supercap
