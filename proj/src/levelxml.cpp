#include "sketchlevel/levelxml.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "sketchlevel/error.hpp"
#include "xml_reader.hpp"

namespace sketchlevel {

std::string_view to_string(ObjectTag tag) noexcept {
  switch (tag) {
    case ObjectTag::Block: return "Block";
    case ObjectTag::TNT: return "TNT";
    case ObjectTag::Pig: return "Pig";
    case ObjectTag::Platform: return "Platform";
  }
  return "Block";
}

namespace {

std::optional<ObjectTag> tag_from_name(std::string_view name) {
  if (name == "Block") return ObjectTag::Block;
  if (name == "TNT") return ObjectTag::TNT;
  if (name == "Pig") return ObjectTag::Pig;
  if (name == "Platform") return ObjectTag::Platform;
  return std::nullopt;
}

double quantize(double v) {
  const double q = std::round(v * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;  // no "-0"
}

}  // namespace

std::string format_decimal(double value) {
  if (!std::isfinite(value)) throw ContractError("cannot format a non-finite coordinate");
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (res.ec != std::errc{}) throw ContractError("coordinate too long to format");
  return std::string(buf, res.ptr);
}

std::optional<double> parse_decimal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i, ++frac;
    if (frac == 0) return std::nullopt;
    digits += frac;
  }
  if (digits == 0 || i != text.size()) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value, std::chars_format::fixed);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

LevelDocument to_document(const LevelSpec& spec, const DocumentDefaults& defaults) {
  LevelDocument doc;
  doc.camera = defaults.camera;
  doc.slingshot = defaults.slingshot;
  doc.birds.assign(static_cast<std::size_t>(std::max(spec.birds, 1)), defaults.bird_type);

  const WorldMapping& w = spec.world;
  auto world_x = [&](int col) { return quantize(w.origin_x + (col - 1) * w.block_w); };
  auto world_y = [&](int row) { return quantize(w.origin_y + (row - 1) * w.block_h); };

  std::vector<Block> blocks = spec.blocks;
  sort_canonical(blocks);
  for (const Block& b : blocks) {
    XmlGameObject obj;
    if (const auto* solid = std::get_if<Solid>(&b.kind)) {
      obj.tag = ObjectTag::Block;
      obj.type_name = defaults.block_type;
      obj.material = solid->material;
    } else {
      obj.tag = ObjectTag::TNT;
      obj.type_name = defaults.tnt_type;
    }
    obj.x = world_x(b.col);
    obj.y = world_y(b.row);
    doc.game_objects.push_back(std::move(obj));
  }
  for (const PigPlacement& p : spec.pigs) {
    XmlGameObject obj;
    obj.tag = ObjectTag::Pig;
    obj.type_name = defaults.pig_type;
    obj.x = world_x(p.col);
    obj.y = world_y(p.row);
    doc.game_objects.push_back(std::move(obj));
  }
  return doc;
}

std::string emit_level(const LevelDocument& doc) {
  auto attr = [](std::string_view name, std::string_view value) {
    return " " + std::string(name) + "=\"" + xml::escape_attribute(value) + "\"";
  };
  auto num = [&](std::string_view name, double v) { return attr(name, format_decimal(v)); };

  std::string out = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<Level>\n";
  out += "  <Camera" + num("x", doc.camera.x) + num("y", doc.camera.y) + num("minWidth", doc.camera.min_width) +
         num("maxWidth", doc.camera.max_width) + "/>\n";
  out += "  <Birds>\n";
  for (const std::string& bird : doc.birds) out += "    <Bird" + attr("type", bird) + "/>\n";
  out += "  </Birds>\n";
  out += "  <Slingshot" + num("x", doc.slingshot.x) + num("y", doc.slingshot.y) + "/>\n";
  out += "  <GameObjects>\n";
  for (const XmlGameObject& obj : doc.game_objects) {
    out += "    <" + std::string(to_string(obj.tag)) + attr("type", obj.type_name);
    if (obj.material) out += attr("material", to_string(*obj.material));
    out += num("x", obj.x) + num("y", obj.y) + num("rotation", obj.rotation) + "/>\n";
  }
  out += "  </GameObjects>\n</Level>\n";
  return out;
}

namespace {

class AttributeSet {
public:
  explicit AttributeSet(const xml::Element& el) : el_(el) {}

  /// Rejects attributes outside `allowed`.
  void restrict_to(std::initializer_list<std::string_view> allowed) const {
    for (const xml::Attribute& a : el_.attributes)
      if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end())
        throw SchemaError(el_.name, "unknown attribute '" + a.name + "'");
  }

  const std::string& text(std::string_view name) const {
    const xml::Attribute* a = el_.attribute(name);
    if (!a) throw SchemaError(el_.name, "missing attribute '" + std::string(name) + "'");
    return a->value;
  }

  double number(std::string_view name) const {
    const std::string& raw = text(name);
    const auto v = parse_decimal(raw);
    if (!v) throw SchemaError(el_.name, "attribute '" + std::string(name) + "' is not a decimal: \"" + raw + "\"");
    return *v;
  }

private:
  const xml::Element& el_;
};

void reject_content(const xml::Element& el, bool children_allowed) {
  if (!el.text.empty()) throw SchemaError(el.name, "unexpected text content");
  if (!children_allowed && !el.children.empty())
    throw SchemaError(el.name, "unexpected child <" + el.children.front().name + ">");
}

XmlGameObject parse_object(const xml::Element& el) {
  const auto tag = tag_from_name(el.name);
  if (!tag) throw SchemaError(el.name, "unknown game object");
  reject_content(el, false);
  AttributeSet attrs(el);
  XmlGameObject obj;
  obj.tag = *tag;
  if (*tag == ObjectTag::Block) {
    attrs.restrict_to({"type", "material", "x", "y", "rotation"});
    const std::string& m = attrs.text("material");
    obj.material = parse_material(m);
    if (!obj.material) throw SchemaError(el.name, "unknown material \"" + m + "\"");
  } else {
    attrs.restrict_to({"type", "x", "y", "rotation"});
  }
  obj.type_name = attrs.text("type");
  obj.x = attrs.number("x");
  obj.y = attrs.number("y");
  obj.rotation = attrs.number("rotation");
  return obj;
}

}  // namespace

LevelDocument parse_level(std::string_view text) {
  const xml::Element root = xml::read_document(text);
  if (root.name != "Level") throw SchemaError(root.name, "root element must be <Level>");
  AttributeSet(root).restrict_to({});
  reject_content(root, true);

  LevelDocument doc;
  std::set<std::string> seen;
  for (const xml::Element& child : root.children) {
    if (!seen.insert(child.name).second) throw SchemaError(child.name, "element appears more than once");
    AttributeSet attrs(child);
    if (child.name == "Camera") {
      reject_content(child, false);
      attrs.restrict_to({"x", "y", "minWidth", "maxWidth"});
      doc.camera = {attrs.number("x"), attrs.number("y"), attrs.number("minWidth"), attrs.number("maxWidth")};
    } else if (child.name == "Birds") {
      reject_content(child, true);
      attrs.restrict_to({});
      for (const xml::Element& bird : child.children) {
        if (bird.name != "Bird") throw SchemaError(bird.name, "only <Bird> may appear inside <Birds>");
        reject_content(bird, false);
        AttributeSet bird_attrs(bird);
        bird_attrs.restrict_to({"type"});
        doc.birds.push_back(bird_attrs.text("type"));
      }
      if (doc.birds.empty()) throw SchemaError("Birds", "at least one <Bird> is required");
    } else if (child.name == "Slingshot") {
      reject_content(child, false);
      attrs.restrict_to({"x", "y"});
      doc.slingshot = {attrs.number("x"), attrs.number("y")};
    } else if (child.name == "GameObjects") {
      reject_content(child, true);
      attrs.restrict_to({});
      for (const xml::Element& obj : child.children) doc.game_objects.push_back(parse_object(obj));
    } else {
      throw SchemaError(child.name, "unknown element inside <Level>");
    }
  }
  for (const char* required : {"Camera", "Birds", "Slingshot", "GameObjects"})
    if (!seen.contains(required)) throw SchemaError(required, "required element is missing from <Level>");
  return doc;
}

LevelSpec from_document(const LevelDocument& doc, const WorldMapping& world, int grid_cols, int grid_rows) {
  if (!(world.block_w > 0.0 && world.block_h > 0.0)) throw ContractError("world cell size must be positive");
  auto snap = [](const XmlGameObject& obj, double offset, double size, const char* axis) {
    const double k = offset / size;
    const double nearest = std::round(k);
    if (std::abs(k - nearest) > 1e-4)
      throw SchemaError(std::string(to_string(obj.tag)),
                        std::string("object at ") + axis + "=" + format_decimal(offset) + " is off the block lattice");
    if (nearest < 0.0 || nearest > 1e6)
      throw SchemaError(std::string(to_string(obj.tag)), std::string("object lies outside the grid along ") + axis);
    return static_cast<int>(nearest) + 1;
  };

  LevelSpec spec;
  spec.world = world;
  spec.birds = static_cast<int>(doc.birds.size());
  int max_col = 1, max_row = 1;
  for (const XmlGameObject& obj : doc.game_objects) {
    if (obj.tag == ObjectTag::Platform) continue;
    const int col = snap(obj, obj.x - world.origin_x, world.block_w, "x");
    const int row = snap(obj, obj.y - world.origin_y, world.block_h, "y");
    if (obj.tag == ObjectTag::Pig) {
      spec.pigs.push_back(PigPlacement{col, row});
      continue;
    }
    Block b{col, row, Tnt{}, Origin::drawn};
    if (obj.tag == ObjectTag::Block) b.kind = Solid{obj.material.value_or(Material::wood)};
    spec.blocks.push_back(b);
    max_col = std::max(max_col, col);
    max_row = std::max(max_row, row);
  }
  spec.grid_cols = grid_cols > 0 ? grid_cols : max_col;
  spec.grid_rows = grid_rows > 0 ? grid_rows : max_row;
  sort_canonical(spec.blocks);
  try {
    spec.validate();
  } catch (const ContractError& e) {
    throw SchemaError("GameObjects", e.what());
  }
  return spec;
}

}  // namespace sketchlevel
