#include "sketchlevel/raster.hpp"

#include <fstream>
#include <iterator>
#include <string>

#include "sketchlevel/error.hpp"

namespace sketchlevel {

SketchImage::SketchImage(Raster pixels) : pixels_(std::move(pixels)) {
  if (pixels_.rows() < 1 || pixels_.cols() < 1) throw DimensionError("image must be at least 1x1");
}

SketchImage::SketchImage(int width, int height, std::span<const std::uint8_t> row_major) {
  if (width < 1 || height < 1) throw DimensionError("image must be at least 1x1");
  if (row_major.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw DimensionError("pixel count " + std::to_string(row_major.size()) + " != " + std::to_string(width) +
                         "x" + std::to_string(height));
  pixels_ = Eigen::Map<const Raster>(row_major.data(), height, width);
}

SketchImage SketchImage::from_values(int width, int height, std::span<const int> row_major) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(row_major.size());
  for (int v : row_major) {
    if (v < 0 || v > 255) throw ContractError("intensity " + std::to_string(v) + " outside [0, 255]");
    bytes.push_back(static_cast<std::uint8_t>(v));
  }
  return SketchImage(width, height, bytes);
}

SketchImage SketchImage::filled(int width, int height, std::uint8_t value) {
  if (width < 1 || height < 1) throw DimensionError("image must be at least 1x1");
  return SketchImage(Raster::Constant(height, width, value));
}

bool SketchImage::operator==(const SketchImage& other) const {
  return pixels_.rows() == other.pixels_.rows() && pixels_.cols() == other.pixels_.cols() &&
         pixels_ == other.pixels_;
}

BinaryGrid::BinaryGrid(int cols, int rows) {
  if (cols < 1 || rows < 1) throw DimensionError("grid must be at least 1x1");
  cells_ = Cells::Zero(rows, cols);
}

BinaryGrid::BinaryGrid(Cells cells) : cells_(std::move(cells)) {
  if (cells_.rows() < 1 || cells_.cols() < 1) throw DimensionError("grid must be at least 1x1");
  if ((cells_ > 1).any()) throw ContractError("grid cells must be 0 or 1");
}

namespace {

bool is_ink_char(char c) { return c == '#' || c == '1' || c == 'X' || c == 'x'; }

template <typename Range>
BinaryGrid grid_from_art(const Range& top_first) {
  const auto rows = static_cast<int>(std::size(top_first));
  if (rows == 0) throw DimensionError("art has no rows");
  const auto cols = static_cast<int>(std::string_view(*std::begin(top_first)).size());
  BinaryGrid grid(cols, rows);
  int row = rows;
  for (std::string_view line : top_first) {
    if (static_cast<int>(line.size()) != cols) throw DimensionError("art rows have unequal length");
    for (int c = 0; c < cols; ++c) grid.set(c + 1, row, is_ink_char(line[c]));
    --row;
  }
  return grid;
}

}  // namespace

BinaryGrid BinaryGrid::from_art(std::initializer_list<std::string_view> top_first) {
  return grid_from_art(top_first);
}

BinaryGrid BinaryGrid::from_art(std::span<const std::string> top_first) { return grid_from_art(top_first); }

bool BinaryGrid::at(int col, int row) const {
  if (col < 1 || col > cols() || row < 1 || row > rows())
    throw DimensionError("cell (" + std::to_string(col) + ", " + std::to_string(row) + ") outside grid");
  return cells_(row - 1, col - 1) != 0;
}

void BinaryGrid::set(int col, int row, bool ink) {
  if (col < 1 || col > cols() || row < 1 || row > rows())
    throw DimensionError("cell (" + std::to_string(col) + ", " + std::to_string(row) + ") outside grid");
  cells_(row - 1, col - 1) = ink ? 1 : 0;
}

std::size_t BinaryGrid::occupied() const { return static_cast<std::size_t>(cells_.cast<int>().sum()); }

bool BinaryGrid::operator==(const BinaryGrid& other) const {
  return rows() == other.rows() && cols() == other.cols() && (cells_ == other.cells_).all();
}

std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const unsigned weighted = 299u * r + 587u * g + 114u * b;
  return static_cast<std::uint8_t>((weighted + 500u) / 1000u);
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("cannot read " + path.string());
  return bytes;
}

std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin()))
    return ImageFormat::png;
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return ImageFormat::pgm;
  return std::nullopt;
}

// Implemented in png_codec.cpp.
SketchImage decode_png(std::span<const std::uint8_t> bytes);

namespace {

bool is_pnm_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class PgmHeaderReader {
public:
  explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  void expect_magic() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') throw DecodeError(0, "missing P5 magic");
    pos_ = 2;
  }

  unsigned read_number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw DecodeError(pos_, std::string("truncated header before ") + what);
    if (bytes_[pos_] < '0' || bytes_[pos_] > '9') throw DecodeError(pos_, std::string("expected ") + what);
    unsigned long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1u << 24) throw DecodeError(pos_, std::string(what) + " too large");
      ++pos_;
    }
    return static_cast<unsigned>(value);
  }

  /// Exactly one whitespace byte separates maxval from the raster.
  void expect_single_space() {
    if (pos_ >= bytes_.size()) throw DecodeError(pos_, "truncated header after maxval");
    if (!is_pnm_space(bytes_[pos_])) throw DecodeError(pos_, "expected whitespace after maxval");
    ++pos_;
  }

private:
  void skip_space_and_comments() {
    bool first = true;
    while (pos_ < bytes_.size()) {
      if (is_pnm_space(bytes_[pos_])) {
        ++pos_;
        first = false;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
        first = false;
      } else {
        break;
      }
    }
    if (first && pos_ < bytes_.size()) throw DecodeError(pos_, "expected whitespace");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

SketchImage decode_pgm(std::span<const std::uint8_t> bytes) {
  PgmHeaderReader header(bytes);
  header.expect_magic();
  const std::size_t width_at = header.pos();
  const unsigned width = header.read_number("width");
  const unsigned height = header.read_number("height");
  if (width == 0 || height == 0) throw DecodeError(width_at, "zero image dimension");
  const std::size_t maxval_at = header.pos();
  const unsigned maxval = header.read_number("maxval");
  if (maxval == 0 || maxval > 255) throw DecodeError(maxval_at, "maxval must be in [1, 255]");
  header.expect_single_space();

  const std::size_t start = header.pos();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() - start < count)
    throw DecodeError(bytes.size(), "truncated raster: expected " + std::to_string(count) + " bytes, found " +
                                        std::to_string(bytes.size() - start));

  Raster pixels(height, width);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes[start + i];
    if (v > maxval) throw DecodeError(start + i, "sample exceeds maxval");
    pixels.data()[i] = maxval == 255 ? static_cast<std::uint8_t>(v)
                                     : static_cast<std::uint8_t>((v * 255u * 2u + maxval) / (2u * maxval));
  }
  return SketchImage(std::move(pixels));
}

}  // namespace

SketchImage load_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
  switch (format) {
    case ImageFormat::png: return decode_png(bytes);
    case ImageFormat::pgm: return decode_pgm(bytes);
  }
  throw FormatError("unsupported image format");
}

SketchImage load_image(std::span<const std::uint8_t> bytes) {
  const auto format = detect_format(bytes);
  if (!format) throw FormatError("unsupported image format: expected PNG or binary PGM (P5)");
  return load_image(bytes, *format);
}

std::vector<std::uint8_t> encode_pgm(const SketchImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().data(), img.pixels().data() + img.pixels().size());
  return out;
}

Tile tile_bounds(int width, int height, int cols, int rows, int col, int row) {
  const int tile_w = width / cols;
  const int tile_h = height / rows;
  Tile t{};
  t.x0 = (col - 1) * tile_w;
  t.x1 = col == cols ? width : t.x0 + tile_w;
  // Grid row `rows` is the top tile; row 1 is the bottom one and takes the remainder.
  const int from_top = rows - row;
  t.y0 = from_top * tile_h;
  t.y1 = row == 1 ? height : t.y0 + tile_h;
  return t;
}

BinaryGrid grid_map(const Bitmap& bitmap, int cols, int rows, double fill_ratio) {
  if (!(fill_ratio > 0.0 && fill_ratio <= 1.0)) throw ContractError("fill_ratio must be in (0, 1]");
  const int width = static_cast<int>(bitmap.cols());
  const int height = static_cast<int>(bitmap.rows());
  if (cols < 1 || rows < 1) throw DimensionError("grid must be at least 1x1");
  if (cols > width || rows > height)
    throw DimensionError("grid " + std::to_string(cols) + "x" + std::to_string(rows) + " exceeds bitmap " +
                         std::to_string(width) + "x" + std::to_string(height));

  BinaryGrid grid(cols, rows);
  for (int col = 1; col <= cols; ++col) {
    for (int row = 1; row <= rows; ++row) {
      const Tile t = tile_bounds(width, height, cols, rows, col, row);
      const auto tile = bitmap.block(t.y0, t.x0, t.y1 - t.y0, t.x1 - t.x0);
      const double inked = tile.cast<double>().sum();
      const double area = static_cast<double>(tile.size());
      grid.set(col, row, inked / area >= fill_ratio);
    }
  }
  return grid;
}

}  // namespace sketchlevel
