// libpng glue. Errors unwind through setjmp/longjmp, so the functions that
// call into libpng keep only trivially destructible locals.

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <string>
#include <vector>

#include "sketchlevel/error.hpp"
#include "sketchlevel/raster.hpp"

namespace sketchlevel {

namespace {

struct ReadState {
  const std::uint8_t* data = nullptr;
  std::size_t size = 0;
  std::size_t pos = 0;
  char message[256] = {};
};

void on_read(png_structp png, png_bytep out, png_size_t length) {
  auto* state = static_cast<ReadState*>(png_get_io_ptr(png));
  if (state->size - state->pos < length) {
    state->pos = state->size;
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, state->data + state->pos, length);
  state->pos += length;
}

void on_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<ReadState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

struct Header {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  png_size_t rowbytes = 0;
};

bool read_header(png_structp png, png_infop info, Header& header) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  header.width = png_get_image_width(png, info);
  header.height = png_get_image_height(png, info);
  header.channels = png_get_channels(png, info);
  header.rowbytes = png_get_rowbytes(png, info);
  return true;
}

bool read_rows(png_structp png, png_infop info, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_image(png, rows);
  png_read_end(png, info);
  return true;
}

class PngReadHandle {
public:
  explicit PngReadHandle(ReadState& state) {
    png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, on_error, on_warning);
    if (!png_) throw Error("libpng: cannot allocate read struct");
    info_ = png_create_info_struct(png_);
    if (!info_) {
      png_destroy_read_struct(&png_, nullptr, nullptr);
      throw Error("libpng: cannot allocate info struct");
    }
    png_set_read_fn(png_, &state, on_read);
    png_set_user_limits(png_, 1u << 14, 1u << 14);
  }
  ~PngReadHandle() { png_destroy_read_struct(&png_, &info_, nullptr); }
  PngReadHandle(const PngReadHandle&) = delete;
  PngReadHandle& operator=(const PngReadHandle&) = delete;

  png_structp png() const { return png_; }
  png_infop info() const { return info_; }

private:
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

std::uint8_t over_white(unsigned value, unsigned alpha) {
  return static_cast<std::uint8_t>((value * alpha + 255u * (255u - alpha) + 127u) / 255u);
}

struct WriteBuffer {
  std::vector<std::uint8_t> bytes;
  char message[256] = {};
};

void on_write(png_structp png, png_bytep data, png_size_t length) {
  auto* buffer = static_cast<WriteBuffer*>(png_get_io_ptr(png));
  buffer->bytes.insert(buffer->bytes.end(), data, data + length);
}

void on_flush(png_structp) {}

void on_write_error(png_structp png, png_const_charp msg) {
  auto* buffer = static_cast<WriteBuffer*>(png_get_error_ptr(png));
  std::snprintf(buffer->message, sizeof buffer->message, "%s", msg);
  png_longjmp(png, 1);
}

bool write_rows(png_structp png, png_infop info, int width, int height, int color_type, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  return true;
}

std::vector<std::uint8_t> encode(int width, int height, int color_type, int channels,
                                 std::span<const std::uint8_t> samples) {
  if (width < 1 || height < 1) throw DimensionError("image must be at least 1x1");
  if (samples.size() != static_cast<std::size_t>(width) * height * channels)
    throw DimensionError("sample count does not match image dimensions");
  WriteBuffer buffer;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &buffer, on_write_error, on_warning);
  if (!png) throw Error("libpng: cannot allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("libpng: cannot allocate info struct");
  }
  png_set_write_fn(png, &buffer, on_write, on_flush);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(samples.data() + static_cast<std::size_t>(y) * width * channels);
  const bool ok = write_rows(png, info, width, height, color_type, rows.data());
  png_destroy_write_struct(&png, &info);
  if (!ok) throw Error(std::string("png encode failed: ") + buffer.message);
  return std::move(buffer.bytes);
}

}  // namespace

SketchImage decode_png(std::span<const std::uint8_t> bytes) {
  ReadState state;
  state.data = bytes.data();
  state.size = bytes.size();
  PngReadHandle handle(state);

  Header header;
  if (!read_header(handle.png(), handle.info(), header)) throw DecodeError(state.pos, state.message);
  if (header.width == 0 || header.height == 0) throw DecodeError(state.pos, "zero image dimension");

  std::vector<std::uint8_t> samples(header.rowbytes * header.height);
  std::vector<png_bytep> rows(header.height);
  for (png_uint_32 y = 0; y < header.height; ++y) rows[y] = samples.data() + y * header.rowbytes;
  if (!read_rows(handle.png(), handle.info(), rows.data())) throw DecodeError(state.pos, state.message);

  Raster pixels(header.height, header.width);
  const int ch = header.channels;
  for (png_uint_32 y = 0; y < header.height; ++y) {
    const std::uint8_t* row = rows[y];
    for (png_uint_32 x = 0; x < header.width; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * ch;
      std::uint8_t gray = 0;
      switch (ch) {
        case 1: gray = px[0]; break;
        case 2: gray = over_white(px[0], px[1]); break;
        case 3: gray = luminance(px[0], px[1], px[2]); break;
        case 4: gray = over_white(luminance(px[0], px[1], px[2]), px[3]); break;
        default: throw DecodeError(state.pos, "unsupported channel count " + std::to_string(ch));
      }
      pixels(y, x) = gray;
    }
  }
  return SketchImage(std::move(pixels));
}

std::vector<std::uint8_t> encode_png(const SketchImage& img) {
  const Raster& px = img.pixels();
  return encode(img.width(), img.height(), PNG_COLOR_TYPE_GRAY, 1,
                std::span<const std::uint8_t>(px.data(), static_cast<std::size_t>(px.size())));
}

std::vector<std::uint8_t> encode_png_rgb(int width, int height, std::span<const std::uint8_t> rgb) {
  return encode(width, height, PNG_COLOR_TYPE_RGB, 3, rgb);
}

}  // namespace sketchlevel
