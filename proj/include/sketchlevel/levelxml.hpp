#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchlevel/levelgen.hpp"

namespace sketchlevel {

enum class ObjectTag { Block, TNT, Pig, Platform };

std::string_view to_string(ObjectTag tag) noexcept;

struct XmlGameObject {
  ObjectTag tag = ObjectTag::Block;
  std::string type_name;
  std::optional<Material> material;  ///< set iff tag == Block
  double x = 0.0;
  double y = 0.0;
  double rotation = 0.0;

  bool operator==(const XmlGameObject&) const = default;
};

struct CameraSettings {
  double x = 0.0;
  double y = 2.0;
  double min_width = 20.0;
  double max_width = 30.0;
  bool operator==(const CameraSettings&) const = default;
};

struct SlingshotPosition {
  double x = -8.0;
  double y = 0.0;
  bool operator==(const SlingshotPosition&) const = default;
};

/// In-memory form of a Science Birds level file.
struct LevelDocument {
  CameraSettings camera;
  std::vector<std::string> birds;
  SlingshotPosition slingshot;
  std::vector<XmlGameObject> game_objects;

  bool operator==(const LevelDocument&) const = default;
};

/// Values to_document() uses for everything a LevelSpec does not carry.
struct DocumentDefaults {
  CameraSettings camera;
  SlingshotPosition slingshot;
  std::string bird_type = "BirdRed";
  std::string block_type = "SquareSmall";
  std::string tnt_type = "TNT";
  std::string pig_type = "BasicSmall";
};

/// Blocks become objects in canonical order, then pigs. Cell (col, row) sits at
/// origin + ((col - 1) * block_w, (row - 1) * block_h), rounded to 1e-6.
LevelDocument to_document(const LevelSpec& spec, const DocumentDefaults& defaults = {});

/// Serialises with a fixed layout: two-space indent, LF endings, attributes in
/// the order type, material, x, y, rotation, shortest round-trip decimals.
std::string emit_level(const LevelDocument& doc);

/// Strict inverse of emit_level. Throws SyntaxError or SchemaError.
LevelDocument parse_level(std::string_view text);

/// Snaps Block/TNT/Pig objects back onto grid cells. Grid dimensions default to
/// the smallest grid holding every block. Throws SchemaError for objects that
/// are off the lattice or left of/below cell (1, 1).
LevelSpec from_document(const LevelDocument& doc, const WorldMapping& world = {}, int grid_cols = 0,
                        int grid_rows = 0);

/// Shortest decimal that round-trips, no exponent, '.' separator.
std::string format_decimal(double value);

/// Inverse of format_decimal; nullopt on anything but [-]digits[.digits].
std::optional<double> parse_decimal(std::string_view text);

}  // namespace sketchlevel
