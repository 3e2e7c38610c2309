#include <algorithm>

#include "clg/docmodel.hpp"
#include "clg/text.hpp"

namespace clg::doc {

// ---------------------------------------------------------------------------
// SourceText

SourceText::SourceText(std::string content) : content_(std::move(content)) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < content_.size(); ++i)
    if (content_[i] == '\n') line_starts_.push_back(i + 1);
}

Position SourceText::position_of(std::size_t offset) const {
  offset = std::min(offset, content_.size());
  const auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  const auto line_index = static_cast<std::size_t>(it - line_starts_.begin()) - 1;
  std::size_t start = line_starts_[line_index];
  if (start == 0 && content_.compare(0, 3, "\xEF\xBB\xBF") == 0 && offset >= 3) start = 3;
  const auto column = text::count_code_points(std::string_view(content_).substr(start, offset - start)) + 1;
  return {line_index + 1, column};
}

std::string_view SourceText::slice(const SourceSpan& s) const {
  return std::string_view(content_).substr(s.begin, s.end - s.begin);
}

std::string_view SourceText::line(std::size_t line_no) const {
  if (line_no == 0 || line_no > line_starts_.size()) return {};
  const auto begin = line_starts_[line_no - 1];
  auto end = line_no < line_starts_.size() ? line_starts_[line_no] - 1 : content_.size();
  if (end > begin && content_[end - 1] == '\r') --end;
  return std::string_view(content_).substr(begin, end - begin);
}

const std::string* Element::attribute(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a.value;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_name_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void append_utf8(std::string& out, char32_t cp) {
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

class Parser {
 public:
  explicit Parser(const SourceText& src) : src_(src), s_(src.content()) {}

  Element parse() {
    if (s_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;
    skip_misc();
    if (at_end() || s_[pos_] != '<') fail(pos_, "expected root element");
    Element root = parse_element();
    skip_misc();
    if (!at_end()) fail(pos_, "content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& what) const {
    throw XmlError(src_.position_of(at), what);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  bool starts_with(std::string_view p) const { return s_.compare(pos_, p.size(), p) == 0; }

  void skip_ws() {
    while (!at_end() && is_ws(s_[pos_])) ++pos_;
  }

  void skip_until(std::string_view terminator, const char* what) {
    const auto start = pos_;
    const auto p = s_.find(terminator, pos_);
    if (p == std::string::npos) fail(start, std::string("unterminated ") + what);
    pos_ = p + terminator.size();
  }

  // Whitespace, comments, processing instructions and DOCTYPE outside the
  // root element.
  void skip_misc() {
    while (true) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<!DOCTYPE")) {
        const auto start = pos_;
        const auto close = s_.find('>', pos_);
        const auto bracket = s_.find('[', pos_);
        if (close == std::string::npos) fail(start, "unterminated DOCTYPE");
        if (bracket != std::string::npos && bracket < close) fail(bracket, "DTD internal subsets are not supported");
        pos_ = close + 1;
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    const auto start = pos_;
    if (at_end() || !is_name_start(static_cast<unsigned char>(s_[pos_]))) fail(pos_, "expected a name");
    while (!at_end() && is_name_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // Decodes a reference starting at '&'; appends to out and returns the
  // number of decoded bytes.
  std::size_t parse_reference(std::string& out) {
    const auto start = pos_;
    const auto semi = s_.find(';', pos_);
    if (semi == std::string::npos || semi - pos_ > 12) fail(start, "unterminated entity reference");
    const std::string_view body(s_.data() + pos_ + 1, semi - pos_ - 1);
    const auto before = out.size();
    if (body == "lt") out += '<';
    else if (body == "gt") out += '>';
    else if (body == "amp") out += '&';
    else if (body == "quot") out += '"';
    else if (body == "apos") out += '\'';
    else if (!body.empty() && body[0] == '#') {
      char32_t cp = 0;
      const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      const auto digits = body.substr(hex ? 2 : 1);
      if (digits.empty()) fail(start, "empty character reference");
      for (char c : digits) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        if (v < 0) fail(start, "bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
        if (cp > 0x10FFFF) fail(start, "character reference out of range");
      }
      if (cp == 0) fail(start, "character reference to NUL");
      append_utf8(out, cp);
    } else {
      fail(start, "unknown entity '&" + std::string(body) + ";'");
    }
    pos_ = semi + 1;
    return out.size() - before;
  }

  std::vector<Attribute> parse_attributes() {
    std::vector<Attribute> attrs;
    while (true) {
      const bool had_ws = !at_end() && is_ws(s_[pos_]);
      skip_ws();
      if (at_end()) fail(pos_, "unterminated start tag");
      if (s_[pos_] == '>' || starts_with("/>")) return attrs;
      if (!had_ws) fail(pos_, "expected whitespace before attribute");

      const auto start = pos_;
      Attribute a;
      a.name = parse_name();
      skip_ws();
      if (at_end() || s_[pos_] != '=') fail(pos_, "expected '=' after attribute name");
      ++pos_;
      skip_ws();
      if (at_end() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail(pos_, "expected quoted attribute value");
      const char quote = s_[pos_++];
      while (true) {
        if (at_end()) fail(start, "unterminated attribute value");
        const char c = s_[pos_];
        if (c == quote) break;
        if (c == '<') fail(pos_, "'<' in attribute value");
        if (c == '&') {
          parse_reference(a.value);
        } else {
          a.value += c;
          ++pos_;
        }
      }
      ++pos_;
      a.span = src_.span(start, pos_);
      for (const auto& other : attrs)
        if (other.name == a.name) fail(start, "duplicate attribute '" + a.name + "'");
      attrs.push_back(std::move(a));
    }
  }

  void flush_text(Element& e, Text& pending, bool& has_pending) {
    if (!has_pending) return;
    pending.span = src_.span(pending.origins.empty() ? pending.span.begin : pending.origins.front().begin,
                             pending.origins.empty() ? pending.span.begin : pending.origins.back().end);
    e.children.push_back(Node{std::move(pending)});
    pending = Text{};
    has_pending = false;
  }

  Element parse_element() {
    const auto start = pos_;
    ++pos_;  // '<'
    Element e;
    e.name = parse_name();
    e.attributes = parse_attributes();

    if (starts_with("/>")) {
      pos_ += 2;
      e.span = src_.span(start, pos_);
      Text empty;
      empty.span = src_.span(pos_, pos_);
      e.children.push_back(Node{std::move(empty)});
      return e;
    }
    ++pos_;  // '>'
    const auto content_start = pos_;

    Text pending;
    bool has_pending = false;
    auto begin_text = [&] {
      if (!has_pending) {
        pending.span.begin = pos_;
        has_pending = true;
      }
    };

    while (true) {
      if (at_end()) fail(start, "unclosed element <" + e.name + ">");
      if (starts_with("</")) {
        flush_text(e, pending, has_pending);
        const auto close_at = pos_;
        pos_ += 2;
        const auto name = parse_name();
        if (name != e.name) fail(close_at, "mismatched end tag </" + name + ">, expected </" + e.name + ">");
        skip_ws();
        if (at_end() || s_[pos_] != '>') fail(pos_, "expected '>' in end tag");
        ++pos_;
        break;
      }
      if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<![CDATA[")) {
        begin_text();
        const auto body = pos_ + 9;
        skip_until("]]>", "CDATA section");
        for (auto i = body; i < pos_ - 3; ++i) {
          pending.value += s_[i];
          pending.origins.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)});
        }
      } else if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!")) {
        fail(pos_, "unsupported markup declaration");
      } else if (s_[pos_] == '<') {
        flush_text(e, pending, has_pending);
        e.children.push_back(Node{parse_element()});
      } else if (s_[pos_] == '&') {
        begin_text();
        const auto ref_start = pos_;
        const auto n = parse_reference(pending.value);
        for (std::size_t i = 0; i < n; ++i)
          pending.origins.push_back({static_cast<std::uint32_t>(ref_start), static_cast<std::uint32_t>(pos_)});
      } else {
        begin_text();
        pending.value += s_[pos_];
        pending.origins.push_back({static_cast<std::uint32_t>(pos_), static_cast<std::uint32_t>(pos_ + 1)});
        ++pos_;
      }
    }

    if (e.children.empty()) {
      Text empty;
      empty.span = src_.span(content_start, content_start);
      e.children.push_back(Node{std::move(empty)});
    }
    e.span = src_.span(start, pos_);
    return e;
  }

  const SourceText& src_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out += c;
    }
  }
}

void serialize_into(std::string& out, const Element& e) {
  out += '<';
  out += e.name;
  for (const auto& a : e.attributes) {
    out += ' ';
    out += a.name;
    out += "=\"";
    escape_into(out, a.value, true);
    out += '"';
  }
  out += '>';
  for (const auto& child : e.children) {
    if (const auto* t = child.text()) escape_into(out, t->value, false);
    else serialize_into(out, *child.element());
  }
  out += "</";
  out += e.name;
  out += '>';
}

}  // namespace

Document parse_document(std::string input) {
  if (input.size() > UINT32_MAX) throw Error("document too large");
  auto source = std::make_shared<const SourceText>(std::move(input));
  Parser parser(*source);
  Element root = parser.parse();
  return {std::move(source), std::move(root)};
}

std::string serialize(const Element& root) {
  std::string out;
  serialize_into(out, root);
  return out;
}

bool same_structure(const Element& a, const Element& b) {
  if (a.name != b.name || a.attributes.size() != b.attributes.size() || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.attributes.size(); ++i) {
    if (a.attributes[i].name != b.attributes[i].name || a.attributes[i].value != b.attributes[i].value) return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    const auto& ca = a.children[i];
    const auto& cb = b.children[i];
    if (ca.value.index() != cb.value.index()) return false;
    if (const auto* ta = ca.text()) {
      if (ta->value != cb.text()->value) return false;
    } else if (!same_structure(*ca.element(), *cb.element())) {
      return false;
    }
  }
  return true;
}

}  // namespace clg::doc
