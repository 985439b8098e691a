#pragma once

#include <string_view>
#include <vector>

#include "sketchlevel/levelgen.hpp"

namespace sketchlevel {

enum class SupportIssue {
  floating,      ///< nothing at all below the block
  internal_gap,  ///< blocks below, but not directly beneath
};

std::string_view to_string(SupportIssue issue) noexcept;

struct SupportViolation {
  int col = 0;
  int row = 0;
  SupportIssue reason = SupportIssue::floating;
  bool operator==(const SupportViolation&) const = default;
};

struct StabilityReport {
  bool stable = true;
  std::vector<SupportViolation> violations;  ///< canonical block order
  int columns_checked = 0;
};

/// Static column support: a block on row 1 rests on the ground, any other
/// block needs a block directly beneath it.
StabilityReport check_support(const LevelSpec& spec);

struct DifficultyWeights {
  double per_block = 1.0;
  double per_height = 2.0;
  double per_tnt = -5.0;
};

struct DifficultyStats {
  int total_blocks = 0;
  int drawn_blocks = 0;
  int fill_blocks = 0;
  int tnt_count = 0;
  int max_height = 0;
  int occupied_columns = 0;
  double difficulty_score = 0.0;

  bool operator==(const DifficultyStats&) const = default;
};

/// score = per_block * total + per_height * max_height + per_tnt * tnt, floored at 0.
DifficultyStats difficulty_stats(const LevelSpec& spec, const DifficultyWeights& weights = {});

}  // namespace sketchlevel
