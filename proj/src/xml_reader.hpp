#pragma once

// Minimal non-validating XML reader for the level format: elements,
// attributes, comments, an optional declaration and the predefined/numeric
// entities. DOCTYPE, CDATA and processing instructions are rejected.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sketchlevel::xml {

struct Attribute {
  std::string name;
  std::string value;
  int line = 0;
  int column = 0;
};

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;  ///< non-whitespace character data, concatenated
  int line = 0;
  int column = 0;

  const Attribute* attribute(std::string_view key) const;
};

/// Parses a complete document and returns its root element. Throws SyntaxError.
Element read_document(std::string_view text);

/// Escapes &, <, >, " and ' for attribute values.
std::string escape_attribute(std::string_view raw);

}  // namespace sketchlevel::xml
