#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace sketchlevel {

inline constexpr int kDefaultThreshold = 128;
inline constexpr int kDefaultGridCols = 16;
inline constexpr int kDefaultGridRows = 10;
inline constexpr double kDefaultFillRatio = 0.20;

/// Image-oriented raster: row 0 is the top of the picture.
template <typename Scalar>
using RasterT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Raster = RasterT<std::uint8_t>;

/// Per-pixel ink bitmap, 1 = ink. Same orientation as Raster.
using Bitmap = RasterT<std::uint8_t>;

/// Grayscale drawing, 0 = black ink, 255 = white paper.
class SketchImage {
public:
  explicit SketchImage(Raster pixels);
  SketchImage(int width, int height, std::span<const std::uint8_t> row_major);

  /// Same as the span constructor but range-checks every value into [0, 255].
  static SketchImage from_values(int width, int height, std::span<const int> row_major);

  /// Constant image.
  static SketchImage filled(int width, int height, std::uint8_t value);

  int width() const noexcept { return static_cast<int>(pixels_.cols()); }
  int height() const noexcept { return static_cast<int>(pixels_.rows()); }
  std::uint8_t at(int x, int y) const { return pixels_(y, x); }
  const Raster& pixels() const noexcept { return pixels_; }
  Raster& pixels() noexcept { return pixels_; }

  bool operator==(const SketchImage& other) const;

private:
  Raster pixels_;
};

/// Occupancy grid the generator walks. Columns are numbered 1..cols from the
/// left, rows 1..rows from the ground up.
class BinaryGrid {
public:
  /// Storage is (row - 1, col - 1): storage row 0 is the ground row.
  using Cells = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  BinaryGrid(int cols, int rows);
  explicit BinaryGrid(Cells cells);

  /// Builds a grid from text rows listed top first; '#', '1', 'X' and 'x' are ink,
  /// anything else is empty. All rows must have equal length.
  static BinaryGrid from_art(std::initializer_list<std::string_view> top_first);
  static BinaryGrid from_art(std::span<const std::string> top_first);

  int cols() const noexcept { return static_cast<int>(cells_.cols()); }
  int rows() const noexcept { return static_cast<int>(cells_.rows()); }

  bool at(int col, int row) const;
  void set(int col, int row, bool ink);

  const Cells& cells() const noexcept { return cells_; }
  std::size_t occupied() const;

  bool operator==(const BinaryGrid& other) const;

private:
  Cells cells_;
};

enum class ImageFormat { png, pgm };

/// Sniffs the magic bytes; nullopt when neither PNG nor binary PGM.
std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes);

/// Decodes PNG or binary PGM (P5). Color PNGs are reduced with
/// round(0.299 R + 0.587 G + 0.114 B); alpha is composited over white.
SketchImage load_image(std::span<const std::uint8_t> bytes, ImageFormat format);

/// Detects the format first; throws FormatError for anything else.
SketchImage load_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_pgm(const SketchImage& img);
std::vector<std::uint8_t> encode_png(const SketchImage& img);
/// 8-bit RGB PNG from interleaved samples, width * height * 3 bytes.
std::vector<std::uint8_t> encode_png_rgb(int width, int height, std::span<const std::uint8_t> rgb);

/// round(0.299 R + 0.587 G + 0.114 B), computed in integer arithmetic.
std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// 1 where intensity < threshold.
template <typename Derived>
Bitmap binarize(const Eigen::MatrixBase<Derived>& intensities, int threshold) {
  return (intensities.template cast<int>().array() < threshold).template cast<std::uint8_t>().matrix();
}

inline Bitmap binarize(const SketchImage& img, int threshold = kDefaultThreshold) {
  return binarize(img.pixels(), threshold);
}

/// Tiles the bitmap into cols x rows rectangles (integer division, remainder
/// to the last tile along each axis) and marks a cell when the inked fraction
/// of its tile reaches fill_ratio. The top image row lands in grid row `rows`.
BinaryGrid grid_map(const Bitmap& bitmap, int cols, int rows, double fill_ratio = kDefaultFillRatio);

/// Pixel rectangle [x0, x1) x [y0, y1) backing a grid cell.
struct Tile {
  int x0, x1, y0, y1;
};
Tile tile_bounds(int width, int height, int cols, int rows, int col, int row);

}  // namespace sketchlevel
