#include "supercap/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "supercap/errors.hpp"
#include "supercap/fs_util.hpp"

namespace supercap {

namespace {

// libpng and libjpeg report errors by longjmp. Everything touched on both
// sides of a setjmp lives in these structs, which are created before the
// jump buffer is armed and have trivial or already-constructed state.

struct PngWriteState {
  std::vector<std::uint8_t>* out = nullptr;
  char message[256] = {};
};

void png_write_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* state = static_cast<PngWriteState*>(png_get_io_ptr(png));
  state->out->insert(state->out->end(), data, data + len);
}

void png_flush_cb(png_structp) {}

void png_error_cb(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngWriteState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_cb(png_structp, png_const_charp) {}

bool encode_png_into(const Image& image, std::vector<png_bytep>& rows, PngWriteState& state) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, png_error_cb,
                                            png_warning_cb);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &state, png_write_cb, png_flush_cb);
  png_set_compression_level(png, 9);
  png_set_compression_strategy(png, 0);  // Z_DEFAULT_STRATEGY
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_ALL_FILTERS);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

bool is_png(std::span<const std::uint8_t> data) {
  return data.size() >= 8 && png_sig_cmp(data.data(), 0, 8) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> data) {
  return data.size() >= 3 && data[0] == 0xFF && data[1] == 0xD8 && data[2] == 0xFF;
}

struct JpegErrorState {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_exit_cb(j_common_ptr cinfo) {
  auto* state = reinterpret_cast<JpegErrorState*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, state->message);
  std::longjmp(state->jump, 1);
}

void jpeg_silent_cb(j_common_ptr, int) {}

bool decode_jpeg_into(std::span<const std::uint8_t> data, std::vector<std::uint8_t>& pixels,
                      int& width, int& height, JpegErrorState& err) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit_cb;
  err.mgr.emit_message = jpeg_silent_cb;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data.data(), static_cast<unsigned long>(data.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  if (cinfo.output_components != 3 || width <= 0 || height <= 0) {
    std::snprintf(err.message, sizeof err.message, "unsupported JPEG layout");
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.empty()) throw InvalidArgument("encode_png: empty image");
  std::vector<std::uint8_t> pixels(image.bytes().begin(), image.bytes().end());
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    rows[y] = pixels.data() + y * static_cast<std::size_t>(image.width()) * 3;
  }
  std::vector<std::uint8_t> out;
  PngWriteState state;
  state.out = &out;
  if (!encode_png_into(image, rows, state)) {
    throw Error(std::string("PNG encoding failed: ") + state.message);
  }
  return out;
}

Image decode_png(std::span<const std::uint8_t> data) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&img, data.data(), data.size()) == 0) {
    throw ImageDecodeError(std::string("invalid PNG: ") + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  if (img.width == 0 || img.height == 0 || img.width > (1U << 15) || img.height > (1U << 15)) {
    png_image_free(&img);
    throw ImageDecodeError("PNG dimensions out of range");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(img));
  png_color background{255, 255, 255};
  if (png_image_finish_read(&img, &background, pixels.data(), 0, nullptr) == 0) {
    std::string msg = img.message;
    png_image_free(&img);
    throw ImageDecodeError("invalid PNG: " + msg);
  }
  return Image(static_cast<int>(img.width), static_cast<int>(img.height), std::move(pixels));
}

Image decode_jpeg(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> pixels;
  int width = 0;
  int height = 0;
  JpegErrorState err;
  if (!decode_jpeg_into(data, pixels, width, height, err)) {
    throw ImageDecodeError(std::string("invalid JPEG: ") + err.message);
  }
  return Image(width, height, std::move(pixels));
}

Image decode_image(std::span<const std::uint8_t> data) {
  if (is_png(data)) return decode_png(data);
  if (is_jpeg(data)) return decode_jpeg(data);
  throw ImageDecodeError("unrecognized image format (expected PNG or JPEG)");
}

Image read_image(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> data = read_file(path);
  try {
    return decode_image(data);
  } catch (const ImageDecodeError& e) {
    throw ImageDecodeError(path.string() + ": " + e.what());
  }
}

void write_png(const std::filesystem::path& path, const Image& image) {
  write_file_atomic(path, encode_png(image));
}

}  // namespace supercap
