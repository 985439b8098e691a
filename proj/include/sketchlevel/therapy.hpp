#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchlevel/stability.hpp"

namespace sketchlevel {

enum class PlayStatus { cleared, failed, not_played };

std::string_view to_string(PlayStatus s) noexcept;
std::optional<PlayStatus> parse_play_status(std::string_view name) noexcept;

/// birds_used is present exactly when the level was played.
struct GameplayOutcome {
  PlayStatus status = PlayStatus::not_played;
  std::optional<int> birds_used;

  static GameplayOutcome not_played() { return {}; }
  static GameplayOutcome cleared(int birds) { return {PlayStatus::cleared, birds}; }
  static GameplayOutcome failed(int birds) { return {PlayStatus::failed, birds}; }

  void validate() const;
  bool operator==(const GameplayOutcome&) const = default;
};

enum class DifficultyBand { normal, hard };

struct FeedbackPhrase {
  std::string text;
  std::string praise_token;  ///< as it appears in text
  std::string label_used;
  std::string template_id;   ///< "<bucket>#<index>"
};

/// Session state for template rotation; owned by the caller.
struct FeedbackRotation {
  std::string last_template_id;
};

/// Word lists for the positivity guard. Entries may span several words and
/// match case-insensitively on word boundaries.
class Lexicon {
public:
  Lexicon(std::vector<std::string> praise, std::vector<std::string> negative);

  /// One entry per line; blank lines and lines starting with '#' are skipped.
  static Lexicon load(const std::filesystem::path& praise_file, const std::filesystem::path& negative_file);

  /// First praise entry found in text, returned with the text's own casing.
  std::optional<std::string> find_praise(std::string_view text) const;
  bool contains_negative(std::string_view text) const;
  /// True when text opens with a praise entry.
  bool starts_with_praise(std::string_view text) const;

  const std::vector<std::vector<std::string>>& praise() const noexcept { return praise_; }
  const std::vector<std::vector<std::string>>& negative() const noexcept { return negative_; }

private:
  std::vector<std::vector<std::string>> praise_;
  std::vector<std::vector<std::string>> negative_;
};

/// At least one praise entry and no negative entry.
bool lexicon_check(const Lexicon& lexicon, std::string_view text);

/// Bucket keys: "cleared/normal", "cleared/hard", "failed/normal",
/// "failed/hard", "not_played". Placeholders: {label}, {birds}.
class TherapyModel {
public:
  static constexpr double kDefaultHardCutoff = 40.0;

  TherapyModel(std::map<std::string, std::vector<std::string>> buckets, Lexicon lexicon,
               double hard_cutoff = kDefaultHardCutoff);

  /// Reads templates.json, praise.txt and negative.txt from one directory.
  static TherapyModel load(const std::filesystem::path& dir);

  const std::map<std::string, std::vector<std::string>>& buckets() const noexcept { return buckets_; }
  const Lexicon& lexicon() const noexcept { return lexicon_; }
  double hard_cutoff() const noexcept { return hard_cutoff_; }
  void set_hard_cutoff(double cutoff) { hard_cutoff_ = cutoff; }

  DifficultyBand band(const DifficultyStats& stats) const noexcept;
  static std::string bucket_key(PlayStatus status, DifficultyBand band);

private:
  std::map<std::string, std::vector<std::string>> buckets_;
  Lexicon lexicon_;
  double hard_cutoff_;
};

/// "1 bird" / "N birds".
std::string birds_phrase(int birds);

/// Replaces {label} and {birds} in a template.
std::string fill_template(std::string_view tmpl, std::string_view label, std::optional<int> birds);

/// Picks a template from the (status, band) bucket with SplitMix64(seed) and
/// fills it in. With a rotation, never repeats the previous template id when
/// the bucket has alternatives.
FeedbackPhrase compose_feedback(const TherapyModel& model, std::string_view top_label, const GameplayOutcome& outcome,
                                const DifficultyStats& stats, std::uint64_t seed,
                                FeedbackRotation* rotation = nullptr);

}  // namespace sketchlevel
