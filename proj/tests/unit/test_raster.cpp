#include <random>
#include <string>

#include "doctest.h"
#include "sketchlevel/error.hpp"
#include "sketchlevel/raster.hpp"
#include "test_support.hpp"

using namespace sketchlevel;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

Bitmap bitmap_from(std::initializer_list<std::string_view> top_first) {
  const int h = static_cast<int>(top_first.size());
  const int w = static_cast<int>(top_first.begin()->size());
  Bitmap b(h, w);
  int y = 0;
  for (auto line : top_first) {
    for (int x = 0; x < w; ++x) b(y, x) = line[x] == '#' ? 1 : 0;
    ++y;
  }
  return b;
}

}  // namespace

TEST_SUITE("load_image") {
  TEST_CASE("2x2 PGM decodes to its raw bytes") {
    std::string pgm = "P5\n2 2\n255\n";
    pgm += std::string{'\x00', '\xff', '\x80', '\x40'};
    const SketchImage img = load_image(bytes_of(pgm), ImageFormat::pgm);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img == SketchImage::from_values(2, 2, std::vector<int>{0, 255, 128, 64}));
  }

  TEST_CASE("PGM header tolerates comments and mixed whitespace") {
    std::string pgm = "P5 # made by hand\n2\t1\r\n255\n";
    pgm += std::string{'\x10', '\x20'};
    const SketchImage img = load_image(bytes_of(pgm));
    CHECK(img.at(0, 0) == 0x10);
    CHECK(img.at(1, 0) == 0x20);
  }

  TEST_CASE("PGM with maxval below 255 is rescaled") {
    std::string pgm = "P5\n3 1\n15\n";
    pgm += std::string{'\x00', '\x0f', '\x07'};
    const SketchImage img = load_image(bytes_of(pgm));
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(2, 0) == 119);  // round(7 * 255 / 15)
  }

  TEST_CASE("truncated PGM raster names the end offset") {
    std::string pgm = "P5\n2 2\n255\n";
    pgm += std::string{'\x00', '\x01', '\x02'};
    try {
      load_image(bytes_of(pgm), ImageFormat::pgm);
      FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
      CHECK(e.offset() == pgm.size());
      CHECK(std::string(e.what()).find("byte " + std::to_string(pgm.size())) != std::string::npos);
    }
  }

  TEST_CASE("PGM header errors point at the offending byte") {
    try {
      load_image(bytes_of("P5\n2 x\n255\n"), ImageFormat::pgm);
      FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
      CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(load_image(bytes_of("P5\n1 1\n300\n\x01"), ImageFormat::pgm), DecodeError);
    CHECK_THROWS_AS(load_image(bytes_of("P5\n1 1\n0\n\x01"), ImageFormat::pgm), DecodeError);
    CHECK_THROWS_AS(load_image(bytes_of("P5\n0 1\n255\n"), ImageFormat::pgm), DecodeError);
    CHECK_THROWS_AS(load_image(bytes_of("P2\n1 1\n255\n1"), ImageFormat::pgm), DecodeError);
    std::string over = "P5\n1 1\n100\n";
    over += '\xc8';
    try {
      load_image(bytes_of(over), ImageFormat::pgm);
      FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
      CHECK(e.offset() == over.size() - 1);
    }
  }

  TEST_CASE("unknown magic is a format error") {
    CHECK_THROWS_AS(load_image(bytes_of("GIF89a....")), FormatError);
    CHECK_THROWS_AS(load_image(std::vector<std::uint8_t>{}), FormatError);
    CHECK_FALSE(detect_format(bytes_of("P6\n1 1\n255\n")).has_value());
  }

  TEST_CASE("pure white 256x256 PNG") {
    const auto png = encode_png(SketchImage::filled(256, 256, 255));
    CHECK(detect_format(png) == ImageFormat::png);
    const SketchImage img = load_image(png);
    CHECK(img.width() == 256);
    CHECK(img.height() == 256);
    CHECK((img.pixels().array() == 255).all());
  }

  TEST_CASE("RGB PNG is reduced by luminance") {
    // round(0.299 * 255) = round(76.245) = 76
    CHECK(luminance(255, 0, 0) == 76);
    CHECK(luminance(0, 255, 0) == 150);  // round(149.685)
    CHECK(luminance(0, 0, 255) == 29);   // round(29.07)
    CHECK(luminance(255, 255, 255) == 255);
    const std::vector<std::uint8_t> rgb = {255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30};
    const SketchImage img = load_image(encode_png_rgb(2, 2, rgb));
    CHECK(img.at(0, 0) == 76);
    CHECK(img.at(1, 0) == 150);
    CHECK(img.at(0, 1) == 29);
    CHECK(img.at(1, 1) == 18);  // round(2.99 + 11.74 + 3.42) = round(18.15)
  }

  TEST_CASE("truncated PNG is a decode error with an offset inside the data") {
    const auto png = encode_png(SketchImage::filled(64, 64, 200));
    for (std::size_t cut : {std::size_t{4}, std::size_t{20}, png.size() / 2, png.size() - 1}) {
      std::vector<std::uint8_t> head(png.begin(), png.begin() + static_cast<std::ptrdiff_t>(cut));
      try {
        load_image(head, ImageFormat::png);
        FAIL("expected DecodeError at cut " << cut);
      } catch (const DecodeError& e) {
        CHECK(e.offset() <= cut);
      }
    }
  }

  TEST_CASE("corrupted PNG chunk is rejected") {
    auto png = encode_png(SketchImage::filled(8, 8, 0));
    png[20] ^= 0xFF;  // inside IHDR, breaks its CRC
    CHECK_THROWS_AS(load_image(png), DecodeError);
  }

  TEST_CASE("gray PNG round trip preserves every pixel") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> value(0, 255), dim(1, 40);
    for (int trial = 0; trial < 20; ++trial) {
      const int w = dim(rng), h = dim(rng);
      Raster px(h, w);
      for (Eigen::Index i = 0; i < px.size(); ++i) px.data()[i] = static_cast<std::uint8_t>(value(rng));
      const SketchImage img(px);
      CHECK(load_image(encode_png(img)) == img);
      CHECK(load_image(encode_pgm(img)) == img);
    }
  }

  TEST_CASE("checked-in sketches decode") {
    const auto img = load_image(read_file_bytes(testing::sketch("house_1.pgm")));
    CHECK(img.width() == 256);
    CHECK(img.height() == 256);
  }
}

TEST_SUITE("binarize") {
  TEST_CASE("white page and full ink") {
    CHECK((binarize(SketchImage::filled(16, 16, 255), 128).array() == 0).all());
    CHECK((binarize(SketchImage::filled(16, 16, 0), 128).array() == 1).all());
  }

  TEST_CASE("strict inequality at the threshold") {
    const auto img = SketchImage::from_values(2, 1, std::vector<int>{128, 127});
    const Bitmap b = binarize(img, 128);
    CHECK(b(0, 0) == 0);
    CHECK(b(0, 1) == 1);
  }

  TEST_CASE("threshold 0 never inks and binarize is idempotent") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> value(0, 255), thr(0, 256);
    for (int trial = 0; trial < 50; ++trial) {
      Raster px(9, 13);
      for (Eigen::Index i = 0; i < px.size(); ++i) px.data()[i] = static_cast<std::uint8_t>(value(rng));
      CHECK((binarize(px, 0).array() == 0).all());
      const int t = thr(rng) % 255 + 1;  // 1..255
      const Bitmap once = binarize(px, t);
      const Raster reembedded = ((1 - once.array()) * 255).matrix();
      CHECK(binarize(reembedded, t) == once);
    }
  }
}

TEST_SUITE("grid_map") {
  TEST_CASE("saturated bitmap fills any grid") {
    const Bitmap full = Bitmap::Ones(256, 256);
    for (auto [c, r] : {std::pair{16, 10}, std::pair{1, 1}, std::pair{7, 13}, std::pair{256, 256}}) {
      const BinaryGrid g = grid_map(full, c, r, 0.2);
      CHECK(g.occupied() == static_cast<std::size_t>(c) * r);
    }
  }

  TEST_CASE("single bottom-left pixel lands in cell (1, 1)") {
    // Tiles of a 4x4 bitmap on a 2x2 grid are 2x2 pixels; the bottom-left tile
    // is image columns 0..1, rows 2..3 and holds the one inked pixel: 1/4 >= 0.25.
    const Bitmap b = bitmap_from({"....", "....", "....", "#..."});
    const BinaryGrid g = grid_map(b, 2, 2, 0.25);
    CHECK(g.at(1, 1));
    CHECK_FALSE(g.at(2, 1));
    CHECK_FALSE(g.at(1, 2));
    CHECK_FALSE(g.at(2, 2));
    CHECK(g.occupied() == 1);
    CHECK(grid_map(b, 2, 2, 0.26).occupied() == 0);
  }

  TEST_CASE("fill ratio 1.0 needs every pixel") {
    const Bitmap b = bitmap_from({"####", "####", "####", "###."});
    const BinaryGrid g = grid_map(b, 2, 2, 1.0);
    CHECK(g.at(1, 1));
    CHECK_FALSE(g.at(2, 1));
    CHECK(g.at(1, 2));
    CHECK(g.at(2, 2));
  }

  TEST_CASE("remainder pixels go to the last tile on each axis") {
    // 5x5 onto 2x2: widths 2 + 3, heights 2 (top) + 3 (bottom).
    const Tile top_left = tile_bounds(5, 5, 2, 2, 1, 2);
    CHECK(top_left.x0 == 0);
    CHECK(top_left.x1 == 2);
    CHECK(top_left.y0 == 0);
    CHECK(top_left.y1 == 2);
    const Tile bottom_right = tile_bounds(5, 5, 2, 2, 2, 1);
    CHECK(bottom_right.x0 == 2);
    CHECK(bottom_right.x1 == 5);
    CHECK(bottom_right.y0 == 2);
    CHECK(bottom_right.y1 == 5);
  }

  TEST_CASE("grid larger than the bitmap is a dimension error") {
    const Bitmap b = Bitmap::Zero(4, 4);
    CHECK_THROWS_AS(grid_map(b, 5, 2, 0.2), DimensionError);
    CHECK_THROWS_AS(grid_map(b, 2, 5, 0.2), DimensionError);
    CHECK_THROWS_AS(grid_map(b, 0, 2, 0.2), DimensionError);
    CHECK_THROWS_AS(grid_map(b, 2, 2, 0.0), ContractError);
  }

  TEST_CASE("bottom image row maps only to grid row 1") {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution ink(0.5);
    for (int trial = 0; trial < 30; ++trial) {
      Bitmap b = Bitmap::Zero(40, 64);
      for (int x = 0; x < 64; ++x) b(39, x) = ink(rng) ? 1 : 0;
      const BinaryGrid g = grid_map(b, 8, 10, 0.01);
      for (int c = 1; c <= 8; ++c)
        for (int r = 2; r <= 10; ++r) REQUIRE_FALSE(g.at(c, r));
    }
  }

  TEST_CASE("occupancy is bounded and monotone in fill_ratio") {
    std::mt19937_64 rng(17);
    std::bernoulli_distribution ink(0.3);
    for (int trial = 0; trial < 20; ++trial) {
      Bitmap b(50, 70);
      for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = ink(rng) ? 1 : 0;
      std::size_t previous = static_cast<std::size_t>(-1);
      BinaryGrid prev_grid(7, 5);
      for (double ratio : {0.05, 0.1, 0.2, 0.3, 0.4, 0.6, 1.0}) {
        const BinaryGrid g = grid_map(b, 7, 5, ratio);
        REQUIRE(g.occupied() <= 35u);
        REQUIRE(g.occupied() <= previous);
        if (previous != static_cast<std::size_t>(-1)) REQUIRE(((g.cells() <= prev_grid.cells())).all());
        previous = g.occupied();
        prev_grid = g;
      }
    }
  }
}

TEST_SUITE("BinaryGrid") {
  TEST_CASE("art rows are listed top first") {
    const BinaryGrid g = BinaryGrid::from_art({"#..", "..#"});
    CHECK(g.cols() == 3);
    CHECK(g.rows() == 2);
    CHECK(g.at(1, 2));
    CHECK(g.at(3, 1));
    CHECK_FALSE(g.at(1, 1));
    CHECK_THROWS_AS(g.at(4, 1), DimensionError);
    CHECK_THROWS_AS(BinaryGrid::from_art({"##", "#"}), DimensionError);
  }

  TEST_CASE("cells must be binary") {
    BinaryGrid::Cells cells = BinaryGrid::Cells::Zero(2, 2);
    cells(0, 0) = 2;
    CHECK_THROWS_AS(BinaryGrid{cells}, ContractError);
    CHECK_THROWS_AS(SketchImage::from_values(1, 1, std::vector<int>{256}), ContractError);
    CHECK_THROWS_AS(SketchImage::from_values(2, 1, std::vector<int>{1}), DimensionError);
  }
}
