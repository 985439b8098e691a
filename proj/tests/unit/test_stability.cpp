#include <random>

#include "doctest.h"
#include "sketchlevel/stability.hpp"
#include "test_support.hpp"

using namespace sketchlevel;

namespace {

GenerationConfig config_16x10(std::uint64_t seed) {
  GenerationConfig cfg;
  cfg.seed = seed;
  cfg.tnt_prob = 0.2;
  return cfg;
}

}  // namespace

TEST_SUITE("check_support") {
  TEST_CASE("empty level is stable") {
    const StabilityReport r = check_support(LevelSpec{});
    CHECK(r.stable);
    CHECK(r.violations.empty());
    CHECK(r.columns_checked == kDefaultGridCols);
  }

  TEST_CASE("lone raised block floats") {
    LevelSpec spec;
    spec.blocks.push_back({2, 3, Solid{}, Origin::drawn});
    const StabilityReport r = check_support(spec);
    CHECK_FALSE(r.stable);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0] == SupportViolation{2, 3, SupportIssue::floating});
  }

  TEST_CASE("gap inside a column is an internal gap") {
    LevelSpec spec;
    spec.blocks = {{4, 1, Solid{}, Origin::drawn}, {4, 3, Tnt{}, Origin::drawn}, {4, 4, Solid{}, Origin::drawn}};
    const StabilityReport r = check_support(spec);
    CHECK_FALSE(r.stable);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0] == SupportViolation{4, 3, SupportIssue::internal_gap});
  }

  TEST_CASE("generated levels are stable; removing any fill block breaks them") {
    std::mt19937_64 rng(31337);
    int with_fill = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const BinaryGrid g = testing::random_grid(16, 10, rng, 0.2);
      const LevelSpec spec = generate(g, config_16x10(trial));
      REQUIRE(check_support(spec).stable);
      for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        if (spec.blocks[i].origin != Origin::fill) continue;
        ++with_fill;
        LevelSpec broken = spec;
        broken.blocks.erase(broken.blocks.begin() + static_cast<std::ptrdiff_t>(i));
        REQUIRE_FALSE(check_support(broken).stable);
      }
    }
    CHECK(with_fill > 0);
  }
}

TEST_SUITE("difficulty_stats") {
  TEST_CASE("empty level") {
    const DifficultyStats s = difficulty_stats(LevelSpec{});
    CHECK(s == DifficultyStats{});
    CHECK(s.difficulty_score == 0.0);
  }

  TEST_CASE("four-block column") {
    // 4 blocks + 2 * height 4 = 12
    LevelSpec spec = testing::column_level(4);
    DifficultyStats s = difficulty_stats(spec);
    CHECK(s.total_blocks == 4);
    CHECK(s.max_height == 4);
    CHECK(s.occupied_columns == 1);
    CHECK(s.difficulty_score == 12.0);
    // one TNT: 12 - 5 = 7
    spec.blocks[1].kind = Tnt{};
    s = difficulty_stats(spec);
    CHECK(s.tnt_count == 1);
    CHECK(s.difficulty_score == 7.0);
  }

  TEST_CASE("score is floored at zero") {
    LevelSpec spec = testing::column_level(1);
    spec.blocks[0].kind = Tnt{};
    CHECK(difficulty_stats(spec).difficulty_score == 0.0);  // 1 + 2 - 5 < 0
  }

  TEST_CASE("counts add up on generated levels") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const LevelSpec spec = generate(testing::random_grid(16, 10, rng), config_16x10(trial));
      const DifficultyStats s = difficulty_stats(spec);
      REQUIRE(s.total_blocks == s.drawn_blocks + s.fill_blocks);
      REQUIRE(s.tnt_count <= s.total_blocks);
      REQUIRE(s.max_height <= spec.grid_rows);
    }
  }

  TEST_CASE("score is monotone in blocks and TNT") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      LevelSpec spec = generate(testing::random_grid(8, 8, rng), [&] {
        GenerationConfig cfg = config_16x10(trial);
        cfg.cols = cfg.rows = 8;
        return cfg;
      }());
      const double before = difficulty_stats(spec).difficulty_score;

      LevelSpec grown = spec;
      grown.blocks.push_back({1, 8, Solid{}, Origin::drawn});  // may duplicate; stats don't care
      REQUIRE(difficulty_stats(grown).difficulty_score >= before);

      for (Block& b : spec.blocks) {
        if (is_tnt(b.kind)) continue;
        const double pre = difficulty_stats(spec).difficulty_score;
        b.kind = Tnt{};
        REQUIRE(difficulty_stats(spec).difficulty_score <= pre);
        break;
      }
    }
  }
}
