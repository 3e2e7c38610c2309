#include "clg/morphlex.hpp"

#include <algorithm>
#include <stdexcept>

#include "clg/text.hpp"

namespace clg::morph {

namespace {

constexpr std::array<std::pair<MorphemeKind, std::string_view>, 3> kKindNames = {{
    {MorphemeKind::root, "root"},
    {MorphemeKind::derivational_suffix, "derivational-suffix"},
    {MorphemeKind::linking_element, "linking-element"},
}};

constexpr std::array<std::pair<Feature, std::string_view>, 7> kFeatureNames = {{
    {Feature::function, "function"},
    {Feature::object, "object"},
    {Feature::working_principle, "working-principle"},
    {Feature::shape, "shape"},
    {Feature::material, "material"},
    {Feature::temporal_graduate_internal, "temporal-graduate-internal"},
    {Feature::none, "none"},
}};

bool is_linking_surface(std::string_view s) {
  return std::find(kLinkingElements.begin(), kLinkingElements.end(), s) != kLinkingElements.end();
}

}  // namespace

std::string_view to_string(MorphemeKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::string_view to_string(Feature feature) {
  for (const auto& [f, name] : kFeatureNames)
    if (f == feature) return name;
  return "?";
}

std::optional<MorphemeKind> parse_kind(std::string_view s) {
  for (const auto& [k, name] : kKindNames)
    if (name == s) return k;
  return std::nullopt;
}

std::optional<Feature> parse_feature(std::string_view s) {
  for (const auto& [f, name] : kFeatureNames)
    if (name == s) return f;
  return std::nullopt;
}

int feature_rank(Feature feature) { return static_cast<int>(feature) + 1; }

std::string_view to_string(FormationPattern pattern) {
  switch (pattern) {
    case FormationPattern::conversion: return "conversion";
    case FormationPattern::ung_nominalization: return "ung-nominalization";
    case FormationPattern::er_or_nominalization: return "er-or-nominalization";
    case FormationPattern::hypernym_compound: return "hypernym-compound";
    case FormationPattern::simplex: return "simplex";
    case FormationPattern::other: return "other";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexicon

Lexicon::Lexicon() : trie_(1) {}

void Lexicon::add_morpheme(MorphemeEntry entry) {
  entry.surface = text::fold_case(entry.surface);
  if (entry.surface.empty()) throw std::invalid_argument("empty morpheme surface");
  if (!text::is_alphabetic(entry.surface))
    throw std::invalid_argument("morpheme surface '" + entry.surface + "' is not alphabetic");
  if (entry.kind == MorphemeKind::linking_element && !is_linking_surface(entry.surface))
    throw std::invalid_argument("'" + entry.surface + "' is not an admissible linking element");
  if (entry.kind != MorphemeKind::root && entry.feature != Feature::none)
    throw std::invalid_argument("feature on non-root morpheme '" + entry.surface + "'");
  if (entry.kind != MorphemeKind::root && entry.is_hypernym_head)
    throw std::invalid_argument("hypernym flag on non-root morpheme '" + entry.surface + "'");
  if (find_morpheme(entry.surface, entry.kind) != nullptr)
    throw DuplicateEntry("duplicate " + std::string(to_string(entry.kind)) + " '" +
                         entry.surface + "'");

  const auto index = static_cast<std::uint32_t>(morphemes_.size());
  std::int32_t node = 0;
  for (char c : entry.surface) {
    auto& slot = trie_[node].next[static_cast<unsigned char>(c)];
    if (slot == 0) {
      slot = static_cast<std::int32_t>(trie_.size());
      trie_.emplace_back();
    }
    node = trie_[node].next[static_cast<unsigned char>(c)];
  }
  trie_[node].terminals.push_back(index);
  morphemes_.push_back(std::move(entry));
}

void Lexicon::add_verb(VerbEntry entry) {
  entry.infinitive = text::fold_case(entry.infinitive);
  if (!text::ends_with(entry.infinitive, "n") || entry.infinitive.size() < 2)
    throw std::invalid_argument("infinitive '" + entry.infinitive + "' must end in -en or -n");
  if (entry.finite_forms.empty())
    throw std::invalid_argument("verb '" + entry.infinitive + "' has no finite forms");
  for (auto& form : entry.finite_forms) {
    form = text::fold_case(form);
    if (form.empty()) throw std::invalid_argument("empty finite form for '" + entry.infinitive + "'");
  }
  if (entry.participle) {
    *entry.participle = text::fold_case(*entry.participle);
    if (entry.participle->empty()) entry.participle.reset();
  }
  if (verb_by_infinitive_.count(entry.infinitive) != 0)
    throw DuplicateEntry("duplicate verb '" + entry.infinitive + "'");

  verb_by_infinitive_.emplace(entry.infinitive, verbs_.size());
  finite_forms_.insert(entry.finite_forms.begin(), entry.finite_forms.end());
  if (entry.participle) participles_.insert(*entry.participle);
  verbs_.push_back(std::move(entry));
}

void Lexicon::add_question_word(std::string_view word) {
  auto folded = text::fold_case(word);
  if (folded.empty()) throw std::invalid_argument("empty question word");
  if (!question_words_.insert(std::move(folded)).second)
    throw DuplicateEntry("duplicate question word '" + std::string(word) + "'");
}

std::size_t Lexicon::root_count() const {
  return static_cast<std::size_t>(std::count_if(morphemes_.begin(), morphemes_.end(), [](const auto& m) {
    return m.kind == MorphemeKind::root;
  }));
}

const MorphemeEntry* Lexicon::find_morpheme(std::string_view surface, MorphemeKind kind) const {
  const auto folded = text::fold_case(surface);
  const MorphemeEntry* found = nullptr;
  for_each_match(folded, 0, [&](std::uint32_t idx, std::size_t len) {
    if (len == folded.size() && morphemes_[idx].kind == kind) found = &morphemes_[idx];
  });
  return found;
}

bool Lexicon::is_finite_form(std::string_view token) const {
  return finite_forms_.count(text::fold_case(token)) != 0;
}

bool Lexicon::is_infinitive(std::string_view token) const {
  return verb_by_infinitive_.count(text::fold_case(token)) != 0;
}

bool Lexicon::is_participle(std::string_view token) const {
  return participles_.count(text::fold_case(token)) != 0;
}

bool Lexicon::is_question_word(std::string_view token) const {
  return question_words_.count(text::fold_case(token)) != 0;
}

const VerbEntry* Lexicon::find_verb(std::string_view infinitive) const {
  const auto it = verb_by_infinitive_.find(text::fold_case(infinitive));
  return it == verb_by_infinitive_.end() ? nullptr : &verbs_[it->second];
}

bool Lexicon::is_verb_root(std::string_view root) const {
  const auto folded = text::fold_case(root);
  return verb_by_infinitive_.count(folded + "en") != 0 || verb_by_infinitive_.count(folded + "n") != 0;
}

// ---------------------------------------------------------------------------
// Loading

Lexicon parse_lexicon(std::string_view content, const std::string& source_name) {
  using K = FormatError::Kind;
  Lexicon lex;
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  std::size_t line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (text::trim(raw).empty() || text::trim(raw).front() == '#') continue;

    const auto fields = text::split(raw, '\t');
    auto fail = [&](const std::string& what) { throw FormatError(K::malformed, source_name, line_no, what); };

    try {
      if (fields[0] == "M") {
        if (fields.size() != 5) fail("morpheme record needs 5 fields, got " + std::to_string(fields.size()));
        const auto kind = parse_kind(fields[2]);
        if (!kind) fail("unknown morpheme kind '" + std::string(fields[2]) + "'");
        const auto feature = parse_feature(fields[3].empty() ? "none" : fields[3]);
        if (!feature) fail("unknown feature '" + std::string(fields[3]) + "'");
        if (fields[4] != "0" && fields[4] != "1") fail("hypernym flag must be 0 or 1");
        lex.add_morpheme({std::string(fields[1]), *kind, *feature, fields[4] == "1"});
      } else if (fields[0] == "V") {
        if (fields.size() != 3 && fields.size() != 4)
          fail("verb record needs 3 or 4 fields, got " + std::to_string(fields.size()));
        VerbEntry verb;
        verb.infinitive = std::string(fields[1]);
        for (auto form : text::split(fields[2], ',')) {
          form = text::trim(form);
          if (form.empty()) fail("empty finite form");
          verb.finite_forms.emplace_back(form);
        }
        if (fields.size() == 4 && !text::trim(fields[3]).empty())
          verb.participle = std::string(text::trim(fields[3]));
        lex.add_verb(std::move(verb));
      } else if (fields[0] == "Q") {
        if (fields.size() != 2) fail("question-word record needs 2 fields");
        lex.add_question_word(text::trim(fields[1]));
      } else {
        fail("unknown record type '" + std::string(fields[0]) + "'");
      }
    } catch (const DuplicateEntry& e) {
      throw FormatError(K::duplicate, source_name, line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw FormatError(K::malformed, source_name, line_no, e.what());
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) { return parse_lexicon(read_file(path), path); }

// ---------------------------------------------------------------------------
// Segmentation

namespace {

// Grammar state: the kind of the previous part.
enum State : int { kStart = 0, kAfterRoot = 1, kAfterSuffix = 2, kAfterLinking = 3, kStates = 4 };

State state_after(MorphemeKind kind) {
  switch (kind) {
    case MorphemeKind::root: return kAfterRoot;
    case MorphemeKind::derivational_suffix: return kAfterSuffix;
    case MorphemeKind::linking_element: return kAfterLinking;
  }
  return kStart;
}

bool allowed(State prev, MorphemeKind next) {
  switch (prev) {
    case kStart:
    case kAfterLinking: return next == MorphemeKind::root;
    case kAfterRoot: return true;
    case kAfterSuffix: return next != MorphemeKind::derivational_suffix;
    default: return false;
  }
}

bool may_end(State s) { return s == kAfterRoot || s == kAfterSuffix; }

// Best cover of folded[pos..] given the previous state: first part plus
// the root count of the whole cover. The remainder is the cell at
// (pos + len, state_after(kind)); len == 0 marks the end of the word.
struct Cell {
  bool reachable = false;
  int roots = 0;
  std::uint32_t index = 0;
  std::uint32_t len = 0;
};

struct Table {
  std::size_t n = 0;
  std::vector<Cell> cells;

  Cell& at(std::size_t pos, int state) { return cells[pos * kStates + state]; }
  const Cell& at(std::size_t pos, int state) const { return cells[pos * kStates + state]; }
};

// Order key over part sequences: longer part first, then kind order
// (root, suffix, linking). True if the chain starting with (a_idx, a_len)
// at pos precedes the chain starting with (b_idx, b_len).
bool precedes(const Table& t, const Lexicon& lex, std::size_t pos, std::uint32_t a_idx, std::uint32_t a_len,
              std::uint32_t b_idx, std::uint32_t b_len) {
  std::size_t pa = pos, pb = pos;
  while (true) {
    if (a_len == 0 || b_len == 0) return a_len == 0 && b_len != 0;
    if (a_len != b_len) return a_len > b_len;
    const auto ka = lex.morphemes()[a_idx].kind;
    const auto kb = lex.morphemes()[b_idx].kind;
    if (ka != kb) return static_cast<int>(ka) < static_cast<int>(kb);
    pa += a_len;
    pb += b_len;
    const auto& na = t.at(pa, state_after(ka));
    const auto& nb = t.at(pb, state_after(kb));
    a_idx = na.index, a_len = na.len;
    b_idx = nb.index, b_len = nb.len;
  }
}

}  // namespace

std::optional<Segmentation> try_segment(std::string_view word, const Lexicon& lex) {
  if (!text::is_alphabetic(word)) return std::nullopt;
  const auto folded = text::fold_case(word);
  const std::size_t n = folded.size();

  Table table{n, std::vector<Cell>((n + 1) * kStates)};
  for (int s = 0; s < kStates; ++s) table.at(n, s).reachable = may_end(static_cast<State>(s));

  for (std::size_t pos = n; pos-- > 0;) {
    for (int s = 0; s < kStates; ++s) {
      Cell best;
      lex.for_each_match(folded, pos, [&](std::uint32_t idx, std::size_t len) {
        const auto kind = lex.morphemes()[idx].kind;
        if (!allowed(static_cast<State>(s), kind)) return;
        const auto& rest = table.at(pos + len, state_after(kind));
        if (!rest.reachable) return;
        const int roots = rest.roots + (kind == MorphemeKind::root ? 1 : 0);
        const auto ulen = static_cast<std::uint32_t>(len);
        if (!best.reachable || roots < best.roots ||
            (roots == best.roots && precedes(table, lex, pos, idx, ulen, best.index, best.len))) {
          best = {true, roots, idx, ulen};
        }
      });
      table.at(pos, s) = best;
    }
  }

  if (n == 0 || !table.at(0, kStart).reachable) return std::nullopt;

  Segmentation seg;
  seg.lexical_count = table.at(0, kStart).roots;
  std::size_t pos = 0;
  int state = kStart;
  while (pos < n) {
    const auto& cell = table.at(pos, state);
    const auto& entry = lex.morphemes()[cell.index];
    seg.parts.push_back({std::string(word.substr(pos, cell.len)), entry});
    pos += cell.len;
    state = state_after(entry.kind);
  }
  return seg;
}

Segmentation segment_compound(std::string_view word, const Lexicon& lex) {
  auto seg = try_segment(word, lex);
  if (!seg) throw SegmentationError("cannot segment '" + std::string(word) + "'");
  return std::move(*seg);
}

int count_lexical_morphemes(std::string_view word, const Lexicon& lex) {
  return segment_compound(word, lex).lexical_count;
}

// ---------------------------------------------------------------------------
// Classification and verb forms

FormationPattern classify_segmentation(std::string_view word, const Segmentation& seg, const Lexicon& lex) {
  if (text::starts_upper(word) && lex.is_infinitive(word)) return FormationPattern::conversion;
  if (seg.parts.empty()) return FormationPattern::other;

  const auto& last = seg.parts.back().entry;
  if (last.kind == MorphemeKind::derivational_suffix) {
    if (last.surface == "ung") return FormationPattern::ung_nominalization;
    if ((last.surface == "er" || last.surface == "or") && seg.parts.size() >= 2) {
      const auto& base = seg.parts[seg.parts.size() - 2].entry;
      if (base.kind == MorphemeKind::root && lex.is_verb_root(base.surface))
        return FormationPattern::er_or_nominalization;
    }
    return FormationPattern::other;
  }

  if (seg.lexical_count >= 2 && last.kind == MorphemeKind::root && last.is_hypernym_head)
    return FormationPattern::hypernym_compound;

  const bool has_suffix = std::any_of(seg.parts.begin(), seg.parts.end(), [](const SegmentPart& p) {
    return p.entry.kind == MorphemeKind::derivational_suffix;
  });
  if (seg.lexical_count == 1 && !has_suffix) return FormationPattern::simplex;
  return FormationPattern::other;
}

FormationPattern classify_formation_pattern(std::string_view word, const Lexicon& lex) {
  // A capitalized infinitive is a conversion whether or not its stem is in
  // the morpheme inventory.
  if (text::starts_upper(word) && lex.is_infinitive(word)) return FormationPattern::conversion;
  return classify_segmentation(word, segment_compound(word, lex), lex);
}

bool is_finite_verb_form(std::string_view token, const Lexicon& lex) { return lex.is_finite_form(token); }

bool is_infinitive_form(std::string_view token, const Lexicon& lex) { return lex.is_infinitive(token); }

}  // namespace clg::morph
