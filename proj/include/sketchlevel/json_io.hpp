#pragma once

// nlohmann::json conversions for the report types the CLI and the service
// print. Keys are stable; they are part of the external interface.

#include "json.hpp"
#include "sketchlevel/levelgen.hpp"
#include "sketchlevel/recognizer.hpp"
#include "sketchlevel/stability.hpp"
#include "sketchlevel/therapy.hpp"

namespace sketchlevel {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const StabilityReport& r);
void to_json(Json& j, const DifficultyStats& s);
void to_json(Json& j, const RecognitionResult& r);
void to_json(Json& j, const GameplayOutcome& o);
void to_json(Json& j, const FeedbackPhrase& f);
void to_json(Json& j, const GenerationConfig& c);
void to_json(Json& j, const Block& b);

/// {"cols", "rows", "blocks": [...], "pigs": [...], "birds", "seed", "tnt_prob", "world"}.
Json level_to_json(const LevelSpec& spec);

/// Throws ContractError when fields are missing or invalid.
GameplayOutcome outcome_from_json(const Json& j);

DifficultyStats stats_from_json(const Json& j);
RecognitionResult recognition_from_json(const Json& j);

}  // namespace sketchlevel
