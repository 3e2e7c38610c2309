#include <algorithm>

#include "clg/docmodel.hpp"
#include "clg/text.hpp"

namespace clg::doc {

std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::period: return "period";
    case Terminal::exclamation: return "exclamation";
    case Terminal::question: return "question";
    case Terminal::none: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Text blocks

std::string TextBlock::path_string() const {
  std::string out;
  for (const auto& name : element_path) {
    if (!out.empty()) out += '/';
    out += name;
  }
  return out;
}

SourceSpan TextBlock::source_span(std::size_t begin, std::size_t end) const {
  if (origins.empty() || begin >= end) {
    const auto at = begin < origins.size() ? origins[begin].begin : span.end;
    return source->span(at, at);
  }
  return source->span(origins[begin].begin, origins[end - 1].end);
}

namespace {

bool has_content(std::string_view s) { return !text::trim(s).empty(); }

void collect_blocks(const Element& e, std::vector<std::string>& path, const Document& doc,
                    std::vector<TextBlock>& out) {
  path.push_back(e.name);

  TextBlock block;
  bool element_since_text = false;
  for (const auto& child : e.children) {
    if (const auto* t = child.text()) {
      if (t->value.empty()) continue;
      if (element_since_text && !block.text.empty()) {
        // Keep words on either side of inline markup apart.
        const auto at = static_cast<std::uint32_t>(t->span.begin);
        block.text += ' ';
        block.origins.push_back({at, at});
      }
      block.text += t->value;
      block.origins.insert(block.origins.end(), t->origins.begin(), t->origins.end());
      element_since_text = false;
    } else {
      element_since_text = true;
    }
  }

  if (has_content(block.text)) {
    block.element_path = path;
    block.source = doc.source;
    block.span = doc.source->span(block.origins.front().begin, block.origins.back().end);
    out.push_back(std::move(block));
  }

  for (const auto& child : e.children)
    if (const auto* c = child.element()) collect_blocks(*c, path, doc, out);

  path.pop_back();
}

}  // namespace

std::vector<TextBlock> extract_text_blocks(const Document& doc) {
  std::vector<TextBlock> out;
  std::vector<std::string> path;
  collect_blocks(doc.root, path, doc, out);
  // Pre-order traversal emits a parent's block before its children's, which
  // is document order by block start except when a parent's first text
  // follows a child. Order strictly by source position.
  std::stable_sort(out.begin(), out.end(),
                   [](const TextBlock& a, const TextBlock& b) { return a.span.begin < b.span.begin; });
  return out;
}

// ---------------------------------------------------------------------------
// Tokens and sentences

namespace {

struct RawToken {
  std::size_t begin;
  std::size_t end;
};

bool is_word_cp(char32_t cp) { return text::is_letter(cp) || text::is_digit(cp); }

std::vector<RawToken> scan_tokens(std::string_view s, std::size_t from, std::size_t to) {
  std::vector<RawToken> out;
  std::size_t i = from;
  std::size_t start = std::string_view::npos;
  while (i < to) {
    const auto d = text::decode(s, i);
    if (is_word_cp(d.cp)) {
      if (start == std::string_view::npos) start = i;
      i += d.length;
      continue;
    }
    if (d.cp == '-' && start != std::string_view::npos && i + 1 < to && is_word_cp(text::decode(s, i + 1).cp)) {
      i += 1;
      continue;
    }
    if (start != std::string_view::npos) {
      out.push_back({start, i});
      start = std::string_view::npos;
    }
    i += d.length;
  }
  if (start != std::string_view::npos) out.push_back({start, to});
  return out;
}

bool is_abbreviation(std::string_view text, std::size_t period, const SplitOptions& options) {
  std::size_t b = period;
  while (b > 0 && !text::is_space(static_cast<unsigned char>(text[b - 1]))) --b;
  const auto word = text::fold_case(text.substr(b, period + 1 - b));
  return std::any_of(options.abbreviations.begin(), options.abbreviations.end(),
                     [&](const std::string& a) { return text::fold_case(a) == word; });
}

}  // namespace

std::vector<Token> tokenize(std::string_view input) {
  const SourceText local{std::string(input)};
  std::vector<Token> out;
  for (const auto& t : scan_tokens(input, 0, input.size()))
    out.push_back({std::string(input.substr(t.begin, t.end - t.begin)), local.span(t.begin, t.end)});
  return out;
}

std::vector<Sentence> split_sentences(const TextBlock& block, const SplitOptions& options) {
  const std::string_view s = block.text;
  std::vector<Sentence> out;

  auto emit = [&](std::size_t from, std::size_t to, Terminal terminal, std::size_t terminal_at) {
    Sentence sentence;
    sentence.terminal = terminal;
    for (const auto& t : scan_tokens(s, from, to))
      sentence.tokens.push_back({std::string(s.substr(t.begin, t.end - t.begin)), block.source_span(t.begin, t.end)});
    if (sentence.tokens.empty()) return;

    std::size_t first = from;
    while (first < to && text::is_space(static_cast<unsigned char>(s[first]))) ++first;
    std::size_t last = to;
    if (terminal != Terminal::none) {
      sentence.terminal_span = block.source_span(terminal_at, terminal_at + 1);
      last = terminal_at + 1;
    } else {
      while (last > first && text::is_space(static_cast<unsigned char>(s[last - 1]))) --last;
    }
    sentence.span = block.source_span(first, last);
    out.push_back(std::move(sentence));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool boundary = i + 1 == s.size() || text::is_space(text::decode(s, i + 1).cp);
    if (!boundary) continue;
    if (c == '.' && is_abbreviation(s, i, options)) continue;
    const auto terminal = c == '.' ? Terminal::period : c == '!' ? Terminal::exclamation : Terminal::question;
    emit(start, i, terminal, i);
    start = i + 1;
  }
  if (start < s.size()) emit(start, s.size(), Terminal::none, s.size());
  return out;
}

}  // namespace clg::doc
