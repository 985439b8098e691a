#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "sketchlevel/raster.hpp"

namespace sketchlevel {

enum class Material { wood, stone, ice };

std::string_view to_string(Material m) noexcept;
std::optional<Material> parse_material(std::string_view name) noexcept;

struct Solid {
  Material material = Material::wood;
  bool operator==(const Solid&) const = default;
};
struct Tnt {
  bool operator==(const Tnt&) const = default;
};
using BlockKind = std::variant<Solid, Tnt>;

inline bool is_tnt(const BlockKind& kind) noexcept { return std::holds_alternative<Tnt>(kind); }

/// Whether a block marks an inked cell or was inserted underneath one as support.
enum class Origin { drawn, fill };

std::string_view to_string(Origin o) noexcept;

struct Block {
  int col = 1;
  int row = 1;
  BlockKind kind = Solid{};
  Origin origin = Origin::drawn;

  bool operator==(const Block&) const = default;
};

/// Canonical order: ascending column, then ascending row (bottom-up).
inline bool canonical_less(const Block& a, const Block& b) noexcept {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

void sort_canonical(std::vector<Block>& blocks);

/// Grid-to-world affine map. (origin_x, origin_y) is the centre of cell (1, 1).
struct WorldMapping {
  double block_w = 0.85;
  double block_h = 0.85;
  double origin_x = -2.0;
  double origin_y = 0.0;

  bool operator==(const WorldMapping&) const = default;
};

/// Target placed on top of a column. Rows may be grid_rows + 1 when the column is full.
struct PigPlacement {
  int col = 1;
  int row = 1;
  bool operator==(const PigPlacement&) const = default;
};

struct LevelSpec {
  int grid_cols = kDefaultGridCols;
  int grid_rows = kDefaultGridRows;
  std::vector<Block> blocks;  ///< canonical order
  std::vector<PigPlacement> pigs;
  WorldMapping world;
  int birds = 1;
  std::uint64_t seed = 0;
  double tnt_prob = 0.0;

  /// Throws ContractError on out-of-bounds or duplicate cells, or a bad bird count.
  void validate() const;

  const Block* find(int col, int row) const noexcept;

  bool operator==(const LevelSpec&) const = default;
};

struct GenerationConfig {
  int threshold = kDefaultThreshold;
  int cols = kDefaultGridCols;
  int rows = kDefaultGridRows;
  double fill_ratio = kDefaultFillRatio;
  double tnt_prob = 0.10;
  std::uint64_t seed = 0;
  Material material = Material::wood;
  std::size_t max_blocks = 200;
  WorldMapping world;
  int birds = 3;
  /// Pigs placed by place_pigs(); 0 keeps the level to blocks only.
  int pigs = 0;

  void validate() const;
};

/// Support blocks for rows last_block + 1 .. pixel - 1 of one column.
/// Requires pixel - last_block >= 2.
std::vector<Block> fill_span(int last_block, int pixel, int col, Material material = Material::wood);

/// Turns blocks into TNT independently with probability tnt_prob. One uniform
/// draw per block, consumed in canonical order from SplitMix64(seed).
LevelSpec convert_tnt(LevelSpec spec, double tnt_prob, std::uint64_t seed);

/// Puts `count` pigs on top of the tallest columns (ties to the lower column
/// number). At most one pig per occupied column.
void place_pigs(LevelSpec& spec, int count);

/// Column scan, support fill and TNT conversion. Throws BudgetError when the
/// block count exceeds cfg.max_blocks.
LevelSpec generate(const BinaryGrid& grid, const GenerationConfig& cfg);

/// Full image pipeline: binarize, grid_map, generate.
BinaryGrid sketch_to_grid(const SketchImage& img, const GenerationConfig& cfg);

}  // namespace sketchlevel
