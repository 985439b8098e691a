#include "sketchlevel/stability.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sketchlevel {

std::string_view to_string(SupportIssue issue) noexcept {
  return issue == SupportIssue::floating ? "floating" : "internal_gap";
}

StabilityReport check_support(const LevelSpec& spec) {
  std::map<int, std::set<int>> rows_by_col;
  for (const Block& b : spec.blocks) rows_by_col[b.col].insert(b.row);

  StabilityReport report;
  report.columns_checked = spec.grid_cols;
  for (const auto& [col, rows] : rows_by_col) {
    for (int row : rows) {
      if (row <= 1 || rows.contains(row - 1)) continue;
      const bool anything_below = *rows.begin() < row;
      report.violations.push_back(
          SupportViolation{col, row, anything_below ? SupportIssue::internal_gap : SupportIssue::floating});
    }
  }
  report.stable = report.violations.empty();
  return report;
}

DifficultyStats difficulty_stats(const LevelSpec& spec, const DifficultyWeights& weights) {
  DifficultyStats s;
  std::set<int> columns;
  for (const Block& b : spec.blocks) {
    ++s.total_blocks;
    if (b.origin == Origin::drawn)
      ++s.drawn_blocks;
    else
      ++s.fill_blocks;
    if (is_tnt(b.kind)) ++s.tnt_count;
    s.max_height = std::max(s.max_height, b.row);
    columns.insert(b.col);
  }
  s.occupied_columns = static_cast<int>(columns.size());
  const double raw = weights.per_block * s.total_blocks + weights.per_height * s.max_height +
                     weights.per_tnt * s.tnt_count;
  s.difficulty_score = std::max(0.0, raw);
  return s;
}

}  // namespace sketchlevel
