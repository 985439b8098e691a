#include "sketchlevel/levelgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "sketchlevel/error.hpp"
#include "sketchlevel/rng.hpp"

namespace sketchlevel {

std::string_view to_string(Material m) noexcept {
  switch (m) {
    case Material::wood: return "wood";
    case Material::stone: return "stone";
    case Material::ice: return "ice";
  }
  return "wood";
}

std::optional<Material> parse_material(std::string_view name) noexcept {
  if (name == "wood") return Material::wood;
  if (name == "stone") return Material::stone;
  if (name == "ice") return Material::ice;
  return std::nullopt;
}

std::string_view to_string(Origin o) noexcept { return o == Origin::drawn ? "drawn" : "fill"; }

void sort_canonical(std::vector<Block>& blocks) { std::sort(blocks.begin(), blocks.end(), canonical_less); }

void LevelSpec::validate() const {
  if (grid_cols < 1 || grid_rows < 1) throw ContractError("grid must be at least 1x1");
  if (birds < 1) throw ContractError("a level needs at least one bird");
  if (!(tnt_prob >= 0.0 && tnt_prob <= 1.0)) throw ContractError("tnt_prob outside [0, 1]");
  if (!(world.block_w > 0.0 && world.block_h > 0.0)) throw ContractError("world cell size must be positive");
  std::set<std::pair<int, int>> seen;
  for (const Block& b : blocks) {
    if (b.col < 1 || b.col > grid_cols || b.row < 1 || b.row > grid_rows)
      throw ContractError("block (" + std::to_string(b.col) + ", " + std::to_string(b.row) + ") outside grid");
    if (!seen.emplace(b.col, b.row).second)
      throw ContractError("two blocks at (" + std::to_string(b.col) + ", " + std::to_string(b.row) + ")");
  }
}

const Block* LevelSpec::find(int col, int row) const noexcept {
  for (const Block& b : blocks)
    if (b.col == col && b.row == row) return &b;
  return nullptr;
}

void GenerationConfig::validate() const {
  if (threshold < 0 || threshold > 255) throw ContractError("threshold outside [0, 255]");
  if (cols < 1 || rows < 1) throw ContractError("grid must be at least 1x1");
  if (!(fill_ratio > 0.0 && fill_ratio <= 1.0)) throw ContractError("fill_ratio outside (0, 1]");
  if (!(tnt_prob >= 0.0 && tnt_prob <= 1.0)) throw ContractError("tnt_prob outside [0, 1]");
  if (!(world.block_w > 0.0 && world.block_h > 0.0)) throw ContractError("world cell size must be positive");
  if (!std::isfinite(world.origin_x) || !std::isfinite(world.origin_y))
    throw ContractError("world origin must be finite");
  if (birds < 1) throw ContractError("birds must be >= 1");
  if (pigs < 0) throw ContractError("pigs must be >= 0");
}

std::vector<Block> fill_span(int last_block, int pixel, int col, Material material) {
  if (last_block < 0) throw ContractError("last_block must be >= 0");
  if (pixel - last_block < 2)
    throw ContractError("fill_span needs a gap of at least 2 rows (last_block " + std::to_string(last_block) +
                        ", pixel " + std::to_string(pixel) + ")");
  std::vector<Block> out;
  out.reserve(static_cast<std::size_t>(pixel - last_block - 1));
  for (int row = last_block + 1; row < pixel; ++row) out.push_back(Block{col, row, Solid{material}, Origin::fill});
  return out;
}

LevelSpec convert_tnt(LevelSpec spec, double tnt_prob, std::uint64_t seed) {
  sort_canonical(spec.blocks);
  SplitMix64 rng(seed);
  for (Block& b : spec.blocks)
    if (rng.uniform() < tnt_prob) b.kind = Tnt{};
  spec.tnt_prob = tnt_prob;
  spec.seed = seed;
  return spec;
}

void place_pigs(LevelSpec& spec, int count) {
  if (count < 0) throw ContractError("pig count must be >= 0");
  std::vector<std::pair<int, int>> tops;  // (col, top row)
  for (const Block& b : spec.blocks) {
    if (tops.empty() || tops.back().first != b.col) tops.emplace_back(b.col, 0);
    tops.back().second = std::max(tops.back().second, b.row);
  }
  std::stable_sort(tops.begin(), tops.end(), [](auto& a, auto& b) { return a.second > b.second; });
  spec.pigs.clear();
  for (int i = 0; i < count && i < static_cast<int>(tops.size()); ++i)
    spec.pigs.push_back(PigPlacement{tops[i].first, tops[i].second + 1});
  std::sort(spec.pigs.begin(), spec.pigs.end(), [](auto& a, auto& b) { return a.col < b.col; });
}

LevelSpec generate(const BinaryGrid& grid, const GenerationConfig& cfg) {
  cfg.validate();
  if (grid.cols() != cfg.cols || grid.rows() != cfg.rows)
    throw DimensionError("grid is " + std::to_string(grid.cols()) + "x" + std::to_string(grid.rows()) +
                         " but the config expects " + std::to_string(cfg.cols) + "x" + std::to_string(cfg.rows));

  LevelSpec spec;
  spec.grid_cols = cfg.cols;
  spec.grid_rows = cfg.rows;
  spec.world = cfg.world;
  spec.birds = cfg.birds;

  for (int column = 1; column <= cfg.cols; ++column) {
    int last_block = 0;  // ground
    for (int pixel = 1; pixel <= cfg.rows; ++pixel) {
      if (!grid.at(column, pixel)) continue;
      if (pixel - last_block >= 2) {
        auto fill = fill_span(last_block, pixel, column, cfg.material);
        spec.blocks.insert(spec.blocks.end(), fill.begin(), fill.end());
      }
      spec.blocks.push_back(Block{column, pixel, Solid{cfg.material}, Origin::drawn});
      last_block = pixel;
    }
  }

  if (spec.blocks.size() > cfg.max_blocks) throw BudgetError(spec.blocks.size(), cfg.max_blocks);

  spec = convert_tnt(std::move(spec), cfg.tnt_prob, cfg.seed);
  if (cfg.pigs > 0) place_pigs(spec, cfg.pigs);
  return spec;
}

BinaryGrid sketch_to_grid(const SketchImage& img, const GenerationConfig& cfg) {
  return grid_map(binarize(img, cfg.threshold), cfg.cols, cfg.rows, cfg.fill_ratio);
}

}  // namespace sketchlevel
