#include <set>

#include "doctest.h"
#include "sketchlevel/error.hpp"
#include "sketchlevel/recognizer.hpp"
#include "sketchlevel/therapy.hpp"
#include "test_support.hpp"

using namespace sketchlevel;

namespace {

const TherapyModel& shipped() {
  static const TherapyModel model = TherapyModel::load(testing::data_dir() / "therapy");
  return model;
}

DifficultyStats with_score(double score) {
  DifficultyStats s;
  s.difficulty_score = score;
  return s;
}

const std::vector<GameplayOutcome> kOutcomes = {GameplayOutcome::cleared(1), GameplayOutcome::cleared(3),
                                                GameplayOutcome::failed(1), GameplayOutcome::failed(2),
                                                GameplayOutcome::not_played()};

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("check examples") {
    const Lexicon& lex = shipped().lexicon();
    CHECK(lexicon_check(lex, "Good job! Lovely tree."));
    CHECK_FALSE(lexicon_check(lex, "That drawing is bad."));
    CHECK_FALSE(lexicon_check(lex, "A level shaped like a tree."));
    CHECK_FALSE(lexicon_check(lex, "Great work, but you failed."));
  }

  TEST_CASE("word boundaries and case") {
    const Lexicon lex({"good job", "nice"}, {"bad", "give up"});
    CHECK(lex.find_praise("GOOD Job, really") == "GOOD Job");
    CHECK_FALSE(lex.find_praise("goodjob").has_value());
    CHECK_FALSE(lex.find_praise("niceness").has_value());
    CHECK_FALSE(lex.contains_negative("a badge of honour"));
    CHECK(lex.contains_negative("Bad!"));
    CHECK(lex.contains_negative("never Give  up"));
    CHECK_FALSE(lex.contains_negative("give it up"));
    CHECK(lex.starts_with_praise("  Nice, a cat"));
    CHECK_FALSE(lex.starts_with_praise("A nice cat"));
  }
}

TEST_SUITE("templates") {
  TEST_CASE("every bucket has at least two templates, each opening with praise") {
    const std::set<std::string> keys = {"cleared/normal", "cleared/hard", "failed/normal", "failed/hard", "not_played"};
    CHECK(shipped().buckets().size() == keys.size());
    for (const auto& key : keys) {
      CAPTURE(key);
      REQUIRE(shipped().buckets().count(key) == 1);
      CHECK(shipped().buckets().at(key).size() >= 2);
      for (const auto& t : shipped().buckets().at(key)) CHECK(shipped().lexicon().starts_with_praise(t));
    }
  }

  TEST_CASE("every template with every starter label passes the check") {
    const TemplateSet starter = load_templates(testing::data_dir() / "models" / "starter.json");
    int checked = 0;
    for (const auto& [key, templates] : shipped().buckets())
      for (const auto& t : templates)
        for (const auto& label : starter.labels())
          for (int birds : {1, 2, 5}) {
            const std::optional<int> b = key == "not_played" ? std::nullopt : std::optional<int>(birds);
            const std::string text = fill_template(t, label, b);
            CAPTURE(text);
            CHECK(lexicon_check(shipped().lexicon(), text));
            CHECK(text.find('{') == std::string::npos);
            CHECK(text.find(label) != std::string::npos);
            ++checked;
          }
    CHECK(checked == 15 * 8 * 3);
  }

  TEST_CASE("fill_template") {
    CHECK(fill_template("{label} with {birds}", "cat", 1) == "cat with 1 bird");
    CHECK(fill_template("{label} with {birds}", "cat", 4) == "cat with 4 birds");
    CHECK(fill_template("{label}{label}", "a", std::nullopt) == "aa");
    CHECK(birds_phrase(0) == "0 birds");
  }

  TEST_CASE("model validation") {
    const Lexicon lex({"good"}, {"bad"});
    std::map<std::string, std::vector<std::string>> ok = {{"cleared/normal", {"Good {label}", "Good {label}"}},
                                                          {"cleared/hard", {"Good {label}", "Good {label}"}},
                                                          {"failed/normal", {"Good {label}", "Good {label}"}},
                                                          {"failed/hard", {"Good {label}", "Good {label}"}},
                                                          {"not_played", {"Good {label}", "Good {label}"}}};
    CHECK_NOTHROW(TherapyModel(ok, lex));
    auto missing = ok;
    missing.erase("failed/hard");
    CHECK_THROWS_AS(TherapyModel(missing, lex), ModelError);
    auto negative = ok;
    negative["cleared/hard"][1] = "Good {label} but bad";
    CHECK_THROWS_AS(TherapyModel(negative, lex), ModelError);
    auto single = ok;
    single["not_played"].pop_back();
    CHECK_THROWS_AS(TherapyModel(single, lex), ModelError);
  }
}

TEST_SUITE("compose_feedback") {
  TEST_CASE("failed on a hard level, seed 3") {
    const FeedbackPhrase p =
        compose_feedback(shipped(), "smiling face", GameplayOutcome::failed(3), with_score(48), 3);
    CHECK(p.text == "Good job! You just designed a hard level in the shape of a smiling face.");
    CHECK(p.template_id == "failed/hard#0");
    CHECK(p.praise_token == "Good job");
    CHECK(p.label_used == "smiling face");
  }

  TEST_CASE("not played mentions the label") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const FeedbackPhrase p = compose_feedback(shipped(), "house", GameplayOutcome::not_played(), with_score(5), seed);
      CHECK(p.text.find("house") != std::string::npos);
      CHECK(shipped().lexicon().starts_with_praise(p.text));
      CHECK(p.template_id.rfind("not_played#", 0) == 0);
    }
  }

  TEST_CASE("bucket follows status and band") {
    CHECK(compose_feedback(shipped(), "cat", GameplayOutcome::cleared(1), with_score(39.9), 0).template_id.rfind(
              "cleared/normal#", 0) == 0);
    CHECK(compose_feedback(shipped(), "cat", GameplayOutcome::cleared(1), with_score(40), 0).template_id.rfind(
              "cleared/hard#", 0) == 0);
    TherapyModel lenient = shipped();
    lenient.set_hard_cutoff(100);
    CHECK(compose_feedback(lenient, "cat", GameplayOutcome::failed(1), with_score(60), 0).template_id.rfind(
              "failed/normal#", 0) == 0);
  }

  TEST_CASE("phrase invariants hold everywhere") {
    for (const auto& outcome : kOutcomes)
      for (double score : {0.0, 40.0, 90.0})
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
          const FeedbackPhrase p = compose_feedback(shipped(), "fish", outcome, with_score(score), seed);
          CHECK(!p.praise_token.empty());
          CHECK(p.text.find(p.praise_token) != std::string::npos);
          CHECK(p.text.find(p.label_used) != std::string::npos);
          CHECK(lexicon_check(shipped().lexicon(), p.text));
        }
  }

  TEST_CASE("deterministic for a seed") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull, 0xffffffffffffffffull}) {
      const auto a = compose_feedback(shipped(), "star", GameplayOutcome::failed(2), with_score(10), seed);
      const auto b = compose_feedback(shipped(), "star", GameplayOutcome::failed(2), with_score(10), seed);
      CHECK(a.text == b.text);
      CHECK(a.template_id == b.template_id);
    }
  }

  TEST_CASE("rotation never repeats the previous template") {
    FeedbackRotation rotation;
    std::string previous;
    for (int i = 0; i < 200; ++i) {
      const auto p = compose_feedback(shipped(), "tree", kOutcomes[i % 2 + 2], with_score(50), i % 4, &rotation);
      CHECK(p.template_id != previous);
      CHECK(rotation.last_template_id == p.template_id);
      previous = p.template_id;
    }
  }

  TEST_CASE("same seed with rotation alternates") {
    FeedbackRotation rotation;
    const auto a = compose_feedback(shipped(), "car", GameplayOutcome::cleared(2), with_score(0), 7, &rotation);
    const auto b = compose_feedback(shipped(), "car", GameplayOutcome::cleared(2), with_score(0), 7, &rotation);
    const auto c = compose_feedback(shipped(), "car", GameplayOutcome::cleared(2), with_score(0), 7, &rotation);
    CHECK(a.template_id != b.template_id);
    CHECK(a.template_id == c.template_id);
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(compose_feedback(shipped(), "", GameplayOutcome::not_played(), {}, 0), ContractError);
    CHECK_THROWS_AS(compose_feedback(shipped(), "cat", GameplayOutcome{PlayStatus::failed, std::nullopt}, {}, 0),
                    ContractError);
    CHECK_THROWS_AS(compose_feedback(shipped(), "cat", GameplayOutcome{PlayStatus::not_played, 2}, {}, 0),
                    ContractError);
    CHECK(parse_play_status("cleared") == PlayStatus::cleared);
    CHECK_FALSE(parse_play_status("quit").has_value());
  }
}
