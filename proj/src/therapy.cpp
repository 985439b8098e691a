#include "sketchlevel/therapy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sketchlevel/error.hpp"
#include "sketchlevel/rng.hpp"

namespace sketchlevel {

std::string_view to_string(PlayStatus s) noexcept {
  switch (s) {
    case PlayStatus::cleared: return "cleared";
    case PlayStatus::failed: return "failed";
    case PlayStatus::not_played: return "not_played";
  }
  return "not_played";
}

std::optional<PlayStatus> parse_play_status(std::string_view name) noexcept {
  if (name == "cleared") return PlayStatus::cleared;
  if (name == "failed") return PlayStatus::failed;
  if (name == "not_played") return PlayStatus::not_played;
  return std::nullopt;
}

void GameplayOutcome::validate() const {
  if (status == PlayStatus::not_played) {
    if (birds_used) throw ContractError("birds_used must be absent when the level was not played");
  } else {
    if (!birds_used) throw ContractError("birds_used is required once the level was played");
    if (*birds_used < 0) throw ContractError("birds_used must be >= 0");
  }
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; }

struct Word {
  std::string lower;
  std::size_t begin;
  std::size_t end;
};

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    Word w{{}, i, i};
    while (i < text.size() && is_word_char(text[i])) {
      w.lower += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      ++i;
    }
    w.end = i;
    words.push_back(std::move(w));
  }
  return words;
}

std::vector<std::vector<std::string>> to_phrases(const std::vector<std::string>& entries) {
  std::vector<std::vector<std::string>> out;
  for (const std::string& entry : entries) {
    std::vector<std::string> phrase;
    for (Word& w : split_words(entry)) phrase.push_back(std::move(w.lower));
    if (!phrase.empty()) out.push_back(std::move(phrase));
  }
  return out;
}

/// Index of the first word where `phrase` matches, or npos.
std::size_t match_at(const std::vector<Word>& words, const std::vector<std::string>& phrase, std::size_t from) {
  for (std::size_t i = from; i + phrase.size() <= words.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < phrase.size() && hit; ++k) hit = words[i + k].lower == phrase[k];
    if (hit) return i;
  }
  return std::string_view::npos;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  return lines;
}

}  // namespace

Lexicon::Lexicon(std::vector<std::string> praise, std::vector<std::string> negative)
    : praise_(to_phrases(praise)), negative_(to_phrases(negative)) {
  if (praise_.empty()) throw Error("praise lexicon is empty");
}

Lexicon Lexicon::load(const std::filesystem::path& praise_file, const std::filesystem::path& negative_file) {
  return Lexicon(read_lines(praise_file), read_lines(negative_file));
}

std::optional<std::string> Lexicon::find_praise(std::string_view text) const {
  const auto words = split_words(text);
  std::size_t best = std::string_view::npos;
  std::size_t best_len = 0;
  for (const auto& phrase : praise_) {
    const std::size_t at = match_at(words, phrase, 0);
    if (at == std::string_view::npos) continue;
    if (best == std::string_view::npos || at < best || (at == best && phrase.size() > best_len)) {
      best = at;
      best_len = phrase.size();
    }
  }
  if (best == std::string_view::npos) return std::nullopt;
  const std::size_t begin = words[best].begin;
  const std::size_t end = words[best + best_len - 1].end;
  return std::string(text.substr(begin, end - begin));
}

bool Lexicon::contains_negative(std::string_view text) const {
  const auto words = split_words(text);
  return std::any_of(negative_.begin(), negative_.end(),
                     [&](const auto& phrase) { return match_at(words, phrase, 0) != std::string_view::npos; });
}

bool Lexicon::starts_with_praise(std::string_view text) const {
  const auto words = split_words(text);
  if (words.empty()) return false;
  // Nothing but punctuation/space may precede the first word.
  if (words.front().begin != text.find_first_not_of(" \t")) return false;
  return std::any_of(praise_.begin(), praise_.end(), [&](const auto& phrase) {
    if (phrase.size() > words.size()) return false;
    for (std::size_t k = 0; k < phrase.size(); ++k)
      if (words[k].lower != phrase[k]) return false;
    return true;
  });
}

bool lexicon_check(const Lexicon& lexicon, std::string_view text) {
  return lexicon.find_praise(text).has_value() && !lexicon.contains_negative(text);
}

std::string birds_phrase(int birds) { return std::to_string(birds) + (birds == 1 ? " bird" : " birds"); }

std::string fill_template(std::string_view tmpl, std::string_view label, std::optional<int> birds) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string_view::npos) throw Error("unterminated placeholder in template");
    const std::string_view name = tmpl.substr(i + 1, close - i - 1);
    if (name == "label") {
      out += label;
    } else if (name == "birds") {
      if (!birds) throw ContractError("template needs {birds} but no bird count is known");
      out += birds_phrase(*birds);
    } else {
      throw Error("unknown placeholder {" + std::string(name) + "}");
    }
    i = close + 1;
  }
  return out;
}

TherapyModel::TherapyModel(std::map<std::string, std::vector<std::string>> buckets, Lexicon lexicon,
                           double hard_cutoff)
    : buckets_(std::move(buckets)), lexicon_(std::move(lexicon)), hard_cutoff_(hard_cutoff) {
  static const std::set<std::string> kKeys = {"cleared/normal", "cleared/hard", "failed/normal", "failed/hard",
                                               "not_played"};
  for (const std::string& key : kKeys) {
    auto it = buckets_.find(key);
    if (it == buckets_.end() || it->second.size() < 2)
      throw ModelError("therapy bucket '" + key + "' needs at least two templates");
  }
  for (const auto& [key, templates] : buckets_) {
    if (!kKeys.count(key)) throw ModelError("unknown therapy bucket '" + key + "'");
    for (const std::string& t : templates) {
      if (!lexicon_.starts_with_praise(t)) throw ModelError("template does not open with praise: \"" + t + "\"");
      if (t.find("{label}") == std::string::npos) throw ModelError("template lacks {label}: \"" + t + "\"");
      if (key == "not_played" && t.find("{birds}") != std::string::npos)
        throw ModelError("not_played templates cannot use {birds}: \"" + t + "\"");
      std::string filled;
      try {
        filled = fill_template(t, "x", 1);
      } catch (const Error& e) {
        throw ModelError(e.what());
      }
      if (lexicon_.contains_negative(filled)) throw ModelError("template contains a negative word: \"" + t + "\"");
    }
  }
}

TherapyModel TherapyModel::load(const std::filesystem::path& dir) {
  std::ifstream in(dir / "templates.json");
  if (!in) throw Error("cannot open " + (dir / "templates.json").string());
  nlohmann::json j;
  try {
    in >> j;
    auto buckets = j.at("buckets").get<std::map<std::string, std::vector<std::string>>>();
    const double cutoff = j.value("hard_cutoff", kDefaultHardCutoff);
    return TherapyModel(std::move(buckets), Lexicon::load(dir / "praise.txt", dir / "negative.txt"), cutoff);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("therapy templates: ") + e.what());
  }
}

DifficultyBand TherapyModel::band(const DifficultyStats& stats) const noexcept {
  return stats.difficulty_score >= hard_cutoff_ ? DifficultyBand::hard : DifficultyBand::normal;
}

std::string TherapyModel::bucket_key(PlayStatus status, DifficultyBand band) {
  if (status == PlayStatus::not_played) return "not_played";
  return std::string(to_string(status)) + (band == DifficultyBand::hard ? "/hard" : "/normal");
}

FeedbackPhrase compose_feedback(const TherapyModel& model, std::string_view top_label, const GameplayOutcome& outcome,
                                const DifficultyStats& stats, std::uint64_t seed, FeedbackRotation* rotation) {
  if (top_label.empty()) throw ContractError("top_label must be non-empty");
  outcome.validate();
  const std::string key = TherapyModel::bucket_key(outcome.status, model.band(stats));
  const auto& templates = model.buckets().at(key);

  SplitMix64 rng(seed);
  std::size_t index = static_cast<std::size_t>(rng.below(templates.size()));
  auto id_of = [&](std::size_t i) { return key + "#" + std::to_string(i); };
  if (rotation && templates.size() >= 2 && rotation->last_template_id == id_of(index))
    index = (index + 1) % templates.size();

  FeedbackPhrase phrase;
  phrase.text = fill_template(templates[index], top_label, outcome.birds_used);
  phrase.label_used = std::string(top_label);
  phrase.template_id = id_of(index);
  phrase.praise_token = model.lexicon().find_praise(phrase.text).value_or("");
  if (rotation) rotation->last_template_id = phrase.template_id;
  return phrase;
}

}  // namespace sketchlevel
