#include "supercap/image.hpp"

#include <algorithm>
#include <string>

#include "supercap/errors.hpp"

namespace supercap {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("image dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill_color) : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  fill(fill_color);
}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw InvalidArgument("pixel buffer size does not match " + std::to_string(width) + "x" +
                          std::to_string(height) + " RGB");
  }
}

void Image::fill(Rgb c) noexcept {
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }
}

void Image::fill_rect(int x, int y, int w, int h, Rgb c) noexcept {
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + w, width_);
  const int y1 = std::min(y + h, height_);
  for (int yy = y0; yy < y1; ++yy) {
    for (int xx = x0; xx < x1; ++xx) set(xx, yy, c);
  }
}

void Image::blit(const Image& src, int x, int y) {
  if (x < 0 || y < 0 || x + src.width_ > width_ || y + src.height_ > height_) {
    throw InvalidArgument("blit source does not fit the destination");
  }
  const std::size_t row_bytes = static_cast<std::size_t>(src.width_) * 3;
  for (int row = 0; row < src.height_; ++row) {
    std::copy_n(src.pixels_.data() + src.offset(0, row), row_bytes,
                pixels_.data() + offset(x, y + row));
  }
}

}  // namespace supercap
