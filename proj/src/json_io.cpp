#include "sketchlevel/json_io.hpp"

#include "sketchlevel/error.hpp"

namespace sketchlevel {

void to_json(Json& j, const StabilityReport& r) {
  Json violations = Json::array();
  for (const SupportViolation& v : r.violations)
    violations.push_back({{"col", v.col}, {"row", v.row}, {"reason", to_string(v.reason)}});
  j = {{"stable", r.stable}, {"columns_checked", r.columns_checked}, {"violations", std::move(violations)}};
}

void to_json(Json& j, const DifficultyStats& s) {
  j = {{"total_blocks", s.total_blocks},     {"drawn_blocks", s.drawn_blocks}, {"fill_blocks", s.fill_blocks},
       {"tnt_count", s.tnt_count},           {"max_height", s.max_height},     {"occupied_columns", s.occupied_columns},
       {"difficulty_score", s.difficulty_score}};
}

void to_json(Json& j, const RecognitionResult& r) {
  Json entries = Json::array();
  for (const Recognition& e : r.entries) entries.push_back({{"label", e.label}, {"confidence", e.confidence}});
  j = {{"entries", std::move(entries)}};
}

void to_json(Json& j, const GameplayOutcome& o) {
  j = {{"status", to_string(o.status)}};
  if (o.birds_used) j["birds_used"] = *o.birds_used;
}

void to_json(Json& j, const FeedbackPhrase& f) {
  j = {{"text", f.text}, {"praise_token", f.praise_token}, {"label_used", f.label_used},
       {"template_id", f.template_id}};
}

void to_json(Json& j, const GenerationConfig& c) {
  j = {{"threshold", c.threshold},
       {"cols", c.cols},
       {"rows", c.rows},
       {"fill_ratio", c.fill_ratio},
       {"tnt_prob", c.tnt_prob},
       {"seed", c.seed},
       {"material", to_string(c.material)},
       {"max_blocks", c.max_blocks},
       {"birds", c.birds},
       {"pigs", c.pigs},
       {"world",
        {{"block_w", c.world.block_w},
         {"block_h", c.world.block_h},
         {"origin_x", c.world.origin_x},
         {"origin_y", c.world.origin_y}}}};
}

void to_json(Json& j, const Block& b) {
  j = {{"col", b.col}, {"row", b.row}, {"kind", is_tnt(b.kind) ? "tnt" : "solid"}};
  if (const auto* solid = std::get_if<Solid>(&b.kind)) j["material"] = to_string(solid->material);
  j["origin"] = to_string(b.origin);
}

Json level_to_json(const LevelSpec& spec) {
  Json pigs = Json::array();
  for (const PigPlacement& p : spec.pigs) pigs.push_back({{"col", p.col}, {"row", p.row}});
  return {{"cols", spec.grid_cols},
          {"rows", spec.grid_rows},
          {"blocks", spec.blocks},
          {"pigs", std::move(pigs)},
          {"birds", spec.birds},
          {"seed", spec.seed},
          {"tnt_prob", spec.tnt_prob},
          {"world",
           {{"block_w", spec.world.block_w},
            {"block_h", spec.world.block_h},
            {"origin_x", spec.world.origin_x},
            {"origin_y", spec.world.origin_y}}}};
}

GameplayOutcome outcome_from_json(const Json& j) {
  if (!j.is_object()) throw ContractError("outcome must be a JSON object");
  if (!j.contains("status") || !j["status"].is_string()) throw ContractError("outcome needs a string 'status'");
  const auto status = parse_play_status(j["status"].get<std::string>());
  if (!status) throw ContractError("unknown status '" + j["status"].get<std::string>() + "'");
  GameplayOutcome o;
  o.status = *status;
  if (j.contains("birds_used") && !j["birds_used"].is_null()) {
    if (!j["birds_used"].is_number_integer()) throw ContractError("birds_used must be an integer");
    o.birds_used = j["birds_used"].get<int>();
  }
  o.validate();
  return o;
}

DifficultyStats stats_from_json(const Json& j) {
  DifficultyStats s;
  s.total_blocks = j.at("total_blocks").get<int>();
  s.drawn_blocks = j.at("drawn_blocks").get<int>();
  s.fill_blocks = j.at("fill_blocks").get<int>();
  s.tnt_count = j.at("tnt_count").get<int>();
  s.max_height = j.at("max_height").get<int>();
  s.occupied_columns = j.at("occupied_columns").get<int>();
  s.difficulty_score = j.at("difficulty_score").get<double>();
  return s;
}

RecognitionResult recognition_from_json(const Json& j) {
  RecognitionResult r;
  for (const auto& e : j.at("entries"))
    r.entries.push_back({e.at("label").get<std::string>(), e.at("confidence").get<double>()});
  return r;
}

}  // namespace sketchlevel
