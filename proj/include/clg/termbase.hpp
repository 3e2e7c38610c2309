#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clg/morphlex.hpp"

namespace clg::terms {

enum class SemanticClass { process, device, part, other };
enum class RelationKind { hypernym, hyponym, part_of };
enum class TermStatus { preferred, admitted, deprecated };

std::string_view to_string(SemanticClass c);
std::string_view to_string(RelationKind k);
std::string_view to_string(TermStatus s);
std::optional<SemanticClass> parse_semantic_class(std::string_view s);
std::optional<RelationKind> parse_relation_kind(std::string_view s);
std::optional<TermStatus> parse_status(std::string_view s);

// (kind, target): target is the <kind> of the owning concept.
struct Relation {
  RelationKind kind = RelationKind::hypernym;
  std::string target;

  bool operator==(const Relation&) const = default;
};

struct Concept {
  std::string id;
  SemanticClass semantic_class = SemanticClass::other;
  std::string definition;
  std::vector<Relation> relations;
  std::size_t source_line = 0;  // 0 when not loaded from a file; not compared

  bool operator==(const Concept& o) const {
    return id == o.id && semantic_class == o.semantic_class && definition == o.definition &&
           relations == o.relations;
  }
};

struct TermEntry {
  std::string concept_id;
  std::string language;  // two lowercase letters
  std::string surface;
  TermStatus status = TermStatus::admitted;
  std::optional<morph::Feature> feature_focus;
  std::size_t source_line = 0;  // 0 when not loaded from a file; not compared

  bool operator==(const TermEntry& o) const {
    return concept_id == o.concept_id && language == o.language && surface == o.surface &&
           status == o.status && feature_focus == o.feature_focus;
  }
};

struct TermHit {
  std::string concept_id;
  TermStatus status = TermStatus::admitted;

  auto operator<=>(const TermHit&) const = default;
};

// Concept-oriented store: concepts are the primary records, terms attach to
// them. Mutators perform only local checks; whole-base integrity is checked
// by check_concept_integrity and enforced by load_termbase.
class Termbase {
 public:
  // Throws DuplicateConcept if the id is taken.
  void add_concept(Concept c);
  void add_relation(std::string_view concept_id, Relation relation);
  void add_term(TermEntry term);

  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::vector<TermEntry>& terms() const { return terms_; }
  const Concept* find_concept(std::string_view id) const;

  // Terms whose case-folded surface equals the key exactly.
  std::span<const std::size_t> terms_with_key(std::string_view folded) const;
  // Case-folded surface -> term indices, ordered by key.
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& index() const { return index_; }

  std::vector<const TermEntry*> terms_of(std::string_view concept_id, std::string_view language = {}) const;
  const TermEntry* preferred_term(std::string_view concept_id, std::string_view language) const;

  bool operator==(const Termbase& o) const { return concepts_ == o.concepts_ && terms_ == o.terms_; }

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, std::size_t> concept_index_;
  std::vector<TermEntry> terms_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> index_;
};

class DuplicateConcept : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Line-based format:
//   C <TAB> id <TAB> class <TAB> definition
//   R <TAB> id <TAB> kind <TAB> target-id
//   T <TAB> concept-id <TAB> lang <TAB> surface <TAB> status [<TAB> feature]
Termbase parse_termbase(std::string_view content, const std::string& source_name = "<termbase>");
Termbase load_termbase(const std::string& path);
std::string serialize_termbase(const Termbase& tb);
void save_termbase(const Termbase& tb, const std::string& path);

// Exact case-folded match plus matches after stripping one of the
// inflection suffixes -n, -en, -s, -es, -e. An empty language matches all.
std::set<TermHit> lookup(const Termbase& tb, std::string_view surface, std::string_view language = {});

struct AmbiguousTerm {
  std::string surface;  // case-folded
  std::vector<std::string> concept_ids;

  bool operator==(const AmbiguousTerm&) const = default;
};

std::vector<AmbiguousTerm> detect_ambiguous_terms(const Termbase& tb);

struct Occurrence {
  std::size_t token_index = 0;
  std::string concept_id;
  TermStatus status = TermStatus::admitted;

  bool operator==(const Occurrence&) const = default;
};

// Single-token matching only; multi-word terms never match. A lowercase
// token does not match a capitalized term.
std::vector<Occurrence> find_occurrences(const Termbase& tb, std::span<const std::string> tokens,
                                         std::string_view language = "de");

struct IntegrityFinding {
  enum class Kind { no_german_term, no_german_preferred, duplicate_preferred, dangling_relation, unknown_concept };

  Kind kind;
  std::string concept_id;
  std::string message;

  // Violations that make a termbase unloadable.
  bool fatal() const { return kind != Kind::no_german_preferred; }
};

std::vector<IntegrityFinding> check_concept_integrity(const Termbase& tb);

// --- preferred-term evaluation ---------------------------------------------

namespace finding {
inline constexpr std::string_view kPatternMismatch = "TERM-PATTERN";
inline constexpr std::string_view kFourMorphemes = "TERM-LENGTH-4";
inline constexpr std::string_view kTooManyMorphemes = "TERM-LENGTH-MAX";
inline constexpr std::string_view kUnsegmentable = "TERM-UNSEGMENTABLE";
}  // namespace finding

struct Candidate {
  std::string surface;
  std::optional<morph::Feature> feature_focus;
};

struct RankedCandidate {
  std::string surface;
  std::optional<morph::Feature> feature_focus;
  std::optional<morph::FormationPattern> pattern;
  std::optional<int> lexical_count;
  bool pattern_matches = false;
  std::vector<std::string> findings;
};

// Formation patterns that express a semantic class; empty for `other`.
std::span<const morph::FormationPattern> expected_patterns(SemanticClass c);

// Lexical morphemes of a term. Conversions whose full form is not in the
// inventory are counted on their infinitive stem.
std::optional<int> term_lexical_count(std::string_view surface, const morph::Lexicon& lex);

// Ranks candidates best-first by: pattern/class agreement, morpheme-count
// tier (<=3, 4, >4 disqualified), feature rank, surface. Unsegmentable
// candidates go last. Independent of input order. Throws
// std::invalid_argument on an empty list.
std::vector<RankedCandidate> evaluate_preferred_term(std::span<const Candidate> candidates, SemanticClass c,
                                                     const morph::Lexicon& lex);

}  // namespace clg::terms
