#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace supercap {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

/// 8-bit interleaved RGB raster, rows top to bottom.
class Image {
 public:
  Image() = default;
  /// Throws InvalidArgument unless width and height are both positive.
  Image(int width, int height, Rgb fill = kBlack);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }
  std::span<std::uint8_t> bytes() noexcept { return pixels_; }

  Rgb at(int x, int y) const noexcept {
    const std::uint8_t* p = pixels_.data() + offset(x, y);
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    std::uint8_t* p = pixels_.data() + offset(x, y);
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  void fill(Rgb c) noexcept;
  /// Fills the clipped rectangle [x, x+w) x [y, y+h).
  void fill_rect(int x, int y, int w, int h, Rgb c) noexcept;
  /// Copies `src` with its top-left corner at (x, y); the source must fit.
  void blit(const Image& src, int x, int y);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// The SuperCaptioning image. Same representation, sized by CompositionConfig.
using Canvas = Image;

}  // namespace supercap
