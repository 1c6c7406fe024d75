#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "supercap/image.hpp"

namespace supercap {

// PNG output is 8-bit RGB, non-interlaced, zlib level 9 with libpng's
// adaptive filter selection, and no ancillary chunks (no time, gamma or
// text). Encoded bytes are therefore a pure function of the pixels for a
// given libpng/zlib build.
std::vector<std::uint8_t> encode_png(const Image& image);

/// Any PNG color type or bit depth; alpha is composited over white.
Image decode_png(std::span<const std::uint8_t> data);

/// Baseline or progressive JPEG, converted to RGB.
Image decode_jpeg(std::span<const std::uint8_t> data);

/// Sniffs the signature and dispatches to the PNG or JPEG decoder.
/// Throws ImageDecodeError for anything else.
Image decode_image(std::span<const std::uint8_t> data);

Image read_image(const std::filesystem::path& path);

/// Atomic: the file appears complete or not at all.
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace supercap
