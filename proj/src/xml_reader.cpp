#include "xml_reader.hpp"

#include <cstdint>

#include "sketchlevel/error.hpp"

namespace sketchlevel::xml {

const Attribute* Element::attribute(std::string_view key) const {
  for (const Attribute& a : attributes)
    if (a.name == key) return &a;
  return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.'; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  Element document() {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") advance(3);
    if (starts_with("<?xml")) declaration();
    misc();
    if (at_end()) fail("document has no root element");
    if (starts_with("<!DOCTYPE")) fail("DOCTYPE is not supported");
    if (peek() != '<') fail("expected '<'");
    Element root = element();
    misc();
    if (!at_end()) fail("content after the root element");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(line_, column_, what); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void expect(std::string_view s) {
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
    advance(s.size());
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) advance();
  }

  void declaration() {
    const auto end = text_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated XML declaration");
    advance(end + 2 - pos_);
  }

  void comment() {
    expect("<!--");
    const auto end = text_.find("-->", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    advance(end + 3 - pos_);
  }

  // Whitespace and comments outside the root element.
  void misc() {
    for (;;) {
      skip_space();
      if (starts_with("<!--"))
        comment();
      else if (starts_with("<?"))
        fail("processing instructions are not supported");
      else
        return;
    }
  }

  std::string name() {
    if (!is_name_start(peek())) fail("expected a name");
    const std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  void entity(std::string& out) {
    const int line = line_, column = column_;
    const auto end = text_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12) throw SyntaxError(line, column, "unterminated entity");
    const std::string_view ref = text_.substr(pos_ + 1, end - pos_ - 1);
    if (ref == "amp") out += '&';
    else if (ref == "lt") out += '<';
    else if (ref == "gt") out += '>';
    else if (ref == "quot") out += '"';
    else if (ref == "apos") out += '\'';
    else if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ref[1] == 'x';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) throw SyntaxError(line, column, "empty character reference");
      for (char c : digits) {
        int d = -1;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        if (d < 0) throw SyntaxError(line, column, "bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) throw SyntaxError(line, column, "character reference out of range");
      }
      if (cp == 0) throw SyntaxError(line, column, "character reference to NUL");
      append_utf8(out, cp);
    } else {
      throw SyntaxError(line, column, "unknown entity '&" + std::string(ref) + ";'");
    }
    advance(end + 1 - pos_);
  }

  Attribute attribute() {
    Attribute attr;
    attr.line = line_;
    attr.column = column_;
    attr.name = name();
    skip_space();
    expect("=");
    skip_space();
    const char quote = peek();
    if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
    advance();
    for (;;) {
      if (at_end()) fail("unterminated attribute value");
      const char c = peek();
      if (c == quote) break;
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        entity(attr.value);
      } else {
        attr.value += c;
        advance();
      }
    }
    advance();
    return attr;
  }

  Element element() {
    Element el;
    el.line = line_;
    el.column = column_;
    expect("<");
    el.name = name();
    for (;;) {
      const bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (!had_space) fail("expected whitespace before attribute");
      const int line = line_, column = column_;
      Attribute attr = attribute();
      if (el.attribute(attr.name)) throw SyntaxError(line, column, "duplicate attribute '" + attr.name + "'");
      el.attributes.push_back(std::move(attr));
    }
    content(el);
    return el;
  }

  void content(Element& el) {
    for (;;) {
      if (at_end()) fail("missing end tag </" + el.name + ">");
      if (starts_with("</")) {
        advance(2);
        const int line = line_, column = column_;
        const std::string closing = name();
        if (closing != el.name)
          throw SyntaxError(line, column, "end tag </" + closing + "> does not match <" + el.name + ">");
        skip_space();
        expect(">");
        return;
      }
      if (starts_with("<!--")) {
        comment();
      } else if (starts_with("<![CDATA[")) {
        fail("CDATA sections are not supported");
      } else if (starts_with("<?")) {
        fail("processing instructions are not supported");
      } else if (peek() == '<') {
        el.children.push_back(element());
      } else if (peek() == '&') {
        entity(el.text);
      } else {
        if (!is_space(peek())) el.text += peek();
        advance();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

Element read_document(std::string_view text) { return Reader(text).document(); }

std::string escape_attribute(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace sketchlevel::xml
