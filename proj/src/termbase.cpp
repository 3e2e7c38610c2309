#include "clg/termbase.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <tuple>

#include "clg/text.hpp"

namespace clg::terms {

using morph::FormationPattern;

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_enum(const std::array<std::pair<E, std::string_view>, N>& names, std::string_view s) {
  for (const auto& [e, name] : names)
    if (name == s) return e;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view enum_name(const std::array<std::pair<E, std::string_view>, N>& names, E e) {
  for (const auto& [v, name] : names)
    if (v == e) return name;
  return "?";
}

constexpr std::array<std::pair<SemanticClass, std::string_view>, 4> kClassNames = {{
    {SemanticClass::process, "process"},
    {SemanticClass::device, "device"},
    {SemanticClass::part, "part"},
    {SemanticClass::other, "other"},
}};

constexpr std::array<std::pair<RelationKind, std::string_view>, 3> kRelationNames = {{
    {RelationKind::hypernym, "hypernym"},
    {RelationKind::hyponym, "hyponym"},
    {RelationKind::part_of, "part-of"},
}};

constexpr std::array<std::pair<TermStatus, std::string_view>, 3> kStatusNames = {{
    {TermStatus::preferred, "preferred"},
    {TermStatus::admitted, "admitted"},
    {TermStatus::deprecated, "deprecated"},
}};

bool valid_language(std::string_view lang) {
  return lang.size() == 2 && lang[0] >= 'a' && lang[0] <= 'z' && lang[1] >= 'a' && lang[1] <= 'z';
}

constexpr std::array<std::string_view, 5> kInflectionSuffixes = {"n", "en", "s", "es", "e"};

}  // namespace

std::string_view to_string(SemanticClass c) { return enum_name(kClassNames, c); }
std::string_view to_string(RelationKind k) { return enum_name(kRelationNames, k); }
std::string_view to_string(TermStatus s) { return enum_name(kStatusNames, s); }
std::optional<SemanticClass> parse_semantic_class(std::string_view s) { return parse_enum(kClassNames, s); }
std::optional<RelationKind> parse_relation_kind(std::string_view s) { return parse_enum(kRelationNames, s); }
std::optional<TermStatus> parse_status(std::string_view s) { return parse_enum(kStatusNames, s); }

// ---------------------------------------------------------------------------
// Termbase

void Termbase::add_concept(Concept c) {
  if (c.id.empty()) throw std::invalid_argument("empty concept id");
  if (concept_index_.count(c.id) != 0) throw DuplicateConcept("duplicate concept id '" + c.id + "'");
  concept_index_.emplace(c.id, concepts_.size());
  concepts_.push_back(std::move(c));
}

void Termbase::add_relation(std::string_view concept_id, Relation relation) {
  const auto it = concept_index_.find(std::string(concept_id));
  if (it == concept_index_.end())
    throw std::invalid_argument("relation on unknown concept '" + std::string(concept_id) + "'");
  concepts_[it->second].relations.push_back(std::move(relation));
}

void Termbase::add_term(TermEntry term) {
  if (term.surface.empty()) throw std::invalid_argument("empty term surface");
  if (!valid_language(term.language))
    throw std::invalid_argument("language code '" + term.language + "' is not two lowercase letters");
  index_[text::fold_case(term.surface)].push_back(terms_.size());
  terms_.push_back(std::move(term));
}

const Concept* Termbase::find_concept(std::string_view id) const {
  const auto it = concept_index_.find(std::string(id));
  return it == concept_index_.end() ? nullptr : &concepts_[it->second];
}

std::span<const std::size_t> Termbase::terms_with_key(std::string_view folded) const {
  const auto it = index_.find(folded);
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<const TermEntry*> Termbase::terms_of(std::string_view concept_id, std::string_view language) const {
  std::vector<const TermEntry*> out;
  for (const auto& t : terms_)
    if (t.concept_id == concept_id && (language.empty() || t.language == language)) out.push_back(&t);
  return out;
}

const TermEntry* Termbase::preferred_term(std::string_view concept_id, std::string_view language) const {
  for (const auto* t : terms_of(concept_id, language))
    if (t->status == TermStatus::preferred) return t;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Integrity

std::vector<IntegrityFinding> check_concept_integrity(const Termbase& tb) {
  using K = IntegrityFinding::Kind;
  std::vector<IntegrityFinding> out;

  for (const auto& t : tb.terms()) {
    if (tb.find_concept(t.concept_id) == nullptr)
      out.push_back({K::unknown_concept, t.concept_id,
                     "term '" + t.surface + "' refers to unknown concept '" + t.concept_id + "'"});
  }

  for (const auto& c : tb.concepts()) {
    for (const auto& r : c.relations) {
      if (tb.find_concept(r.target) == nullptr)
        out.push_back({K::dangling_relation, c.id,
                       "concept '" + c.id + "' has " + std::string(to_string(r.kind)) + " relation to missing '" +
                           r.target + "'"});
    }

    std::map<std::string, std::vector<std::string>> preferred_by_lang;
    bool has_german = false;
    for (const auto* t : tb.terms_of(c.id)) {
      if (t->language == "de") has_german = true;
      if (t->status == TermStatus::preferred) preferred_by_lang[t->language].push_back(t->surface);
    }
    for (const auto& [lang, surfaces] : preferred_by_lang) {
      if (surfaces.size() > 1) {
        std::string list;
        for (const auto& s : surfaces) list += (list.empty() ? "" : ", ") + s;
        out.push_back({K::duplicate_preferred, c.id,
                       "concept '" + c.id + "' has " + std::to_string(surfaces.size()) + " preferred " + lang +
                           " terms (" + list + ")"});
      }
    }
    if (!has_german) {
      out.push_back({K::no_german_term, c.id, "concept '" + c.id + "' has no German term"});
    } else if (preferred_by_lang.count("de") == 0) {
      out.push_back({K::no_german_preferred, c.id, "concept '" + c.id + "' has no preferred German term"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

Termbase parse_termbase(std::string_view content, const std::string& source_name) {
  using K = FormatError::Kind;
  Termbase tb;
  struct PendingRelation {
    std::size_t line;
    std::string id;
    Relation relation;
  };
  std::vector<PendingRelation> relations;
  std::vector<TermEntry> terms;

  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  std::size_t line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (text::trim(raw).empty() || text::trim(raw).front() == '#') continue;

    const auto fields = text::split(raw, '\t');
    auto fail = [&](const std::string& what) { throw FormatError(K::malformed, source_name, line_no, what); };

    if (fields[0] == "C") {
      if (fields.size() != 4) fail("concept record needs 4 fields, got " + std::to_string(fields.size()));
      const auto cls = parse_semantic_class(fields[2]);
      if (!cls) fail("unknown semantic class '" + std::string(fields[2]) + "'");
      try {
        tb.add_concept({std::string(fields[1]), *cls, std::string(fields[3]), {}, line_no});
      } catch (const DuplicateConcept& e) {
        throw FormatError(K::duplicate, source_name, line_no, e.what());
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (fields[0] == "R") {
      if (fields.size() != 4) fail("relation record needs 4 fields, got " + std::to_string(fields.size()));
      const auto kind = parse_relation_kind(fields[2]);
      if (!kind) fail("unknown relation kind '" + std::string(fields[2]) + "'");
      relations.push_back({line_no, std::string(fields[1]), {*kind, std::string(fields[3])}});
    } else if (fields[0] == "T") {
      if (fields.size() != 5 && fields.size() != 6)
        fail("term record needs 5 or 6 fields, got " + std::to_string(fields.size()));
      TermEntry t;
      t.concept_id = std::string(fields[1]);
      t.language = std::string(fields[2]);
      t.surface = std::string(text::trim(fields[3]));
      const auto status = parse_status(fields[4]);
      if (!status) fail("unknown term status '" + std::string(fields[4]) + "'");
      t.status = *status;
      if (fields.size() == 6 && !fields[5].empty()) {
        const auto feature = morph::parse_feature(fields[5]);
        if (!feature) fail("unknown feature '" + std::string(fields[5]) + "'");
        t.feature_focus = *feature;
      }
      if (t.surface.empty()) fail("empty term surface");
      if (!valid_language(t.language)) fail("language code '" + t.language + "' is not two lowercase letters");
      t.source_line = line_no;
      terms.push_back(std::move(t));
    } else {
      fail("unknown record type '" + std::string(fields[0]) + "'");
    }
  }

  // Records may reference concepts defined further down the file.
  for (auto& r : relations) {
    if (tb.find_concept(r.id) == nullptr)
      throw FormatError(K::malformed, source_name, r.line, "relation on unknown concept '" + r.id + "'");
    tb.add_relation(r.id, std::move(r.relation));
  }
  for (auto& t : terms) {
    if (tb.find_concept(t.concept_id) == nullptr)
      throw FormatError(K::malformed, source_name, t.source_line,
                        "term '" + t.surface + "' refers to unknown concept '" + t.concept_id + "'");
    tb.add_term(std::move(t));
  }

  for (const auto& f : check_concept_integrity(tb))
    if (f.fatal()) throw IntegrityError(source_name + ": " + f.message);
  return tb;
}

Termbase load_termbase(const std::string& path) { return parse_termbase(read_file(path), path); }

std::string serialize_termbase(const Termbase& tb) {
  auto check = [](std::string_view field, std::string_view what) {
    if (field.find_first_of("\t\n\r") != std::string_view::npos)
      throw std::invalid_argument(std::string(what) + " contains a tab or line break");
  };

  std::ostringstream out;
  out << "# C id class definition | R id kind target | T concept lang surface status feature\n";
  for (const auto& c : tb.concepts()) {
    check(c.id, "concept id");
    check(c.definition, "definition");
    out << "C\t" << c.id << '\t' << to_string(c.semantic_class) << '\t' << c.definition << '\n';
    for (const auto& r : c.relations) {
      check(r.target, "relation target");
      out << "R\t" << c.id << '\t' << to_string(r.kind) << '\t' << r.target << '\n';
    }
  }
  for (const auto& t : tb.terms()) {
    check(t.surface, "term surface");
    out << "T\t" << t.concept_id << '\t' << t.language << '\t' << t.surface << '\t' << to_string(t.status);
    if (t.feature_focus) out << '\t' << morph::to_string(*t.feature_focus);
    out << '\n';
  }
  return out.str();
}

void save_termbase(const Termbase& tb, const std::string& path) {
  const auto content = serialize_termbase(tb);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("cannot write " + path);
}

// ---------------------------------------------------------------------------
// Queries

namespace {

template <typename Keep>
std::set<TermHit> lookup_if(const Termbase& tb, std::string_view surface, std::string_view language, Keep&& keep) {
  std::set<TermHit> hits;
  const auto folded = text::fold_case(surface);
  auto collect = [&](std::string_view key) {
    for (auto idx : tb.terms_with_key(key)) {
      const auto& t = tb.terms()[idx];
      if ((language.empty() || t.language == language) && keep(t)) hits.insert({t.concept_id, t.status});
    }
  };

  collect(folded);
  for (auto suffix : kInflectionSuffixes) {
    if (folded.size() > suffix.size() + 1 && text::ends_with(folded, suffix))
      collect(std::string_view(folded).substr(0, folded.size() - suffix.size()));
  }
  return hits;
}

}  // namespace

std::set<TermHit> lookup(const Termbase& tb, std::string_view surface, std::string_view language) {
  return lookup_if(tb, surface, language, [](const TermEntry&) { return true; });
}

std::vector<AmbiguousTerm> detect_ambiguous_terms(const Termbase& tb) {
  std::vector<AmbiguousTerm> out;
  for (const auto& [key, indices] : tb.index()) {
    std::set<std::string> ids;
    for (auto idx : indices) ids.insert(tb.terms()[idx].concept_id);
    if (ids.size() >= 2) out.push_back({key, {ids.begin(), ids.end()}});
  }
  return out;
}

std::vector<Occurrence> find_occurrences(const Termbase& tb, std::span<const std::string> tokens,
                                         std::string_view language) {
  std::vector<Occurrence> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    // A lowercase token is not a capitalized (noun) term: "reinigen" is the
    // verb, "Reinigen" the process.
    const bool lower = !text::starts_upper(tokens[i]);
    const auto hits = lookup_if(tb, tokens[i], language,
                                [&](const TermEntry& t) { return !(lower && text::starts_upper(t.surface)); });
    for (const auto& hit : hits) out.push_back({i, hit.concept_id, hit.status});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Preferred-term evaluation

std::span<const FormationPattern> expected_patterns(SemanticClass c) {
  static constexpr std::array<FormationPattern, 1> process = {FormationPattern::conversion};
  static constexpr std::array<FormationPattern, 2> device = {FormationPattern::ung_nominalization,
                                                             FormationPattern::er_or_nominalization};
  static constexpr std::array<FormationPattern, 1> part = {FormationPattern::hypernym_compound};
  switch (c) {
    case SemanticClass::process: return process;
    case SemanticClass::device: return device;
    case SemanticClass::part: return part;
    case SemanticClass::other: return {};
  }
  return {};
}

std::optional<int> term_lexical_count(std::string_view surface, const morph::Lexicon& lex) {
  if (auto seg = morph::try_segment(surface, lex)) return seg->lexical_count;
  if (lex.is_infinitive(surface)) {
    const auto* verb = lex.find_verb(surface);
    const auto& inf = verb->infinitive;
    const std::size_t strip = text::ends_with(inf, "en") ? 2 : 1;
    if (auto seg = morph::try_segment(surface.substr(0, surface.size() - strip), lex)) return seg->lexical_count;
  }
  return std::nullopt;
}

std::vector<RankedCandidate> evaluate_preferred_term(std::span<const Candidate> candidates, SemanticClass c,
                                                     const morph::Lexicon& lex) {
  if (candidates.empty()) throw std::invalid_argument("no candidate terms to evaluate");
  const auto expected = expected_patterns(c);

  struct Keyed {
    std::tuple<int, int, int, int, std::string> key;
    RankedCandidate candidate;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(candidates.size());

  for (const auto& cand : candidates) {
    RankedCandidate r;
    r.surface = cand.surface;
    r.feature_focus = cand.feature_focus;
    r.lexical_count = term_lexical_count(cand.surface, lex);

    if (text::starts_upper(cand.surface) && lex.is_infinitive(cand.surface)) {
      r.pattern = FormationPattern::conversion;
    } else if (auto seg = morph::try_segment(cand.surface, lex)) {
      r.pattern = morph::classify_segmentation(cand.surface, *seg, lex);
    }

    int qualification = 0;  // 0 qualified, 1 too long, 2 unanalyzable
    int count_tier = 0;
    if (!r.lexical_count || !r.pattern) {
      qualification = 2;
      r.findings.emplace_back(finding::kUnsegmentable);
    } else if (*r.lexical_count > 4) {
      qualification = 1;
      r.findings.emplace_back(finding::kTooManyMorphemes);
    } else if (*r.lexical_count == 4) {
      count_tier = 1;
      r.findings.emplace_back(finding::kFourMorphemes);
    }

    r.pattern_matches = expected.empty() ||
                        (r.pattern && std::find(expected.begin(), expected.end(), *r.pattern) != expected.end());
    if (!r.pattern_matches && r.pattern) r.findings.emplace_back(finding::kPatternMismatch);

    const int feature = morph::feature_rank(r.feature_focus.value_or(morph::Feature::none));
    keyed.push_back({{qualification, r.pattern_matches ? 0 : 1, count_tier, feature, r.surface}, std::move(r)});
  }

  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });

  std::vector<RankedCandidate> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.candidate));
  return out;
}

}  // namespace clg::terms
