#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clg/error.hpp"

namespace clg::doc {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;  // 1-based, in code points

  bool operator==(const Position&) const = default;
};

// Half-open byte range [begin, end) plus the line/column of begin.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  Position start;

  bool operator==(const SourceSpan&) const = default;
};

class SourceText {
 public:
  explicit SourceText(std::string content);

  const std::string& content() const { return content_; }
  Position position_of(std::size_t offset) const;
  SourceSpan span(std::size_t begin, std::size_t end) const { return {begin, end, position_of(begin)}; }
  std::string_view slice(const SourceSpan& s) const;
  // Text of a 1-based line without the line break.
  std::string_view line(std::size_t line_no) const;

 private:
  std::string content_;
  std::vector<std::size_t> line_starts_;
};

class XmlError : public Error {
 public:
  XmlError(Position pos, const std::string& what)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what), position_(pos) {}

  Position position() const { return position_; }

 private:
  Position position_;
};

struct Attribute {
  std::string name;
  std::string value;
  SourceSpan span;
};

// Raw source range a decoded byte came from. Entity and character
// references map every byte of their replacement to the whole reference.
struct ByteOrigin {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

struct Text {
  std::string value;  // entity-decoded
  SourceSpan span;
  std::vector<ByteOrigin> origins;  // one per byte of value
};

struct Node;

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Node> children;
  SourceSpan span;

  const std::string* attribute(std::string_view name) const;
};

struct Node {
  std::variant<Element, Text> value;

  const Element* element() const { return std::get_if<Element>(&value); }
  const Text* text() const { return std::get_if<Text>(&value); }
};

struct Document {
  std::shared_ptr<const SourceText> source;
  Element root;
};

// Minimal XML: elements, attributes, text, CDATA, comments, the five
// predefined entities and numeric character references. The XML
// declaration, processing instructions and a DOCTYPE without internal
// subset are skipped. A leading BOM is tolerated. Elements without content
// get one empty text child. Throws XmlError.
Document parse_document(std::string input);

std::string serialize(const Element& root);

// Equality of names, attributes and text values, ignoring spans.
bool same_structure(const Element& a, const Element& b);

// --- text blocks, sentences, tokens ---------------------------------------

struct TextBlock {
  std::vector<std::string> element_path;  // root first
  std::string text;
  SourceSpan span;
  std::vector<ByteOrigin> origins;  // one per byte of text
  std::shared_ptr<const SourceText> source;

  std::string path_string() const;
  // Source span of text[begin, end).
  SourceSpan source_span(std::size_t begin, std::size_t end) const;
};

// One block per element whose direct text children contain non-whitespace,
// in document order. Text children separated by child elements are joined
// with a single space.
std::vector<TextBlock> extract_text_blocks(const Document& doc);

struct Token {
  std::string surface;
  SourceSpan span;
};

enum class Terminal { period, exclamation, question, none };

std::string_view to_string(Terminal t);

struct Sentence {
  std::vector<Token> tokens;
  Terminal terminal = Terminal::none;
  SourceSpan span;
  std::optional<SourceSpan> terminal_span;
};

struct SplitOptions {
  std::vector<std::string> abbreviations = {"z.B.", "bzw.", "ggf.", "max.", "min."};
};

// Word tokens: runs of letters and digits, with hyphens kept between two
// word characters. Punctuation is dropped. Spans are relative to `text`.
std::vector<Token> tokenize(std::string_view text);

// Splits on '.', '!' or '?' followed by whitespace or end of text, unless
// the word ending at a period is a listed abbreviation. Spans are source
// coordinates.
std::vector<Sentence> split_sentences(const TextBlock& block, const SplitOptions& options = {});

}  // namespace clg::doc
