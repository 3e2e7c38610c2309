#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "clg/error.hpp"

namespace clg::morph {

enum class MorphemeKind { root, derivational_suffix, linking_element };

// Distinguishing feature a root expresses, in term-selection rank order.
enum class Feature {
  function,
  object,
  working_principle,
  shape,
  material,
  temporal_graduate_internal,
  none,
};

std::string_view to_string(MorphemeKind kind);
std::string_view to_string(Feature feature);
std::optional<MorphemeKind> parse_kind(std::string_view s);
std::optional<Feature> parse_feature(std::string_view s);

// 1 for function, 6 for temporal/graduate/internal, 7 for none.
int feature_rank(Feature feature);

struct MorphemeEntry {
  std::string surface;  // case-folded
  MorphemeKind kind = MorphemeKind::root;
  Feature feature = Feature::none;
  bool is_hypernym_head = false;

  bool operator==(const MorphemeEntry&) const = default;
};

struct VerbEntry {
  std::string infinitive;
  std::vector<std::string> finite_forms;
  std::optional<std::string> participle;

  bool operator==(const VerbEntry&) const = default;
};

inline constexpr std::array<std::string_view, 6> kLinkingElements = {"s", "n", "en", "e", "er", "es"};

// Morpheme and verb-form inventory. Build it with the add_* calls (each
// validates its entry), then treat it as immutable; all queries are const
// and thread-safe.
class Lexicon {
 public:
  Lexicon();

  // Throw std::invalid_argument on invariant violations and
  // DuplicateEntry on a repeated surface within a kind.
  void add_morpheme(MorphemeEntry entry);
  void add_verb(VerbEntry entry);
  void add_question_word(std::string_view word);

  const std::vector<MorphemeEntry>& morphemes() const { return morphemes_; }
  const std::vector<VerbEntry>& verbs() const { return verbs_; }
  const std::unordered_set<std::string>& question_words() const { return question_words_; }

  std::size_t root_count() const;

  const MorphemeEntry* find_morpheme(std::string_view surface, MorphemeKind kind) const;

  // Case-insensitive queries on single tokens.
  bool is_finite_form(std::string_view token) const;
  bool is_infinitive(std::string_view token) const;
  bool is_participle(std::string_view token) const;
  bool is_question_word(std::string_view token) const;
  const VerbEntry* find_verb(std::string_view infinitive) const;

  // True if root + "en" or root + "n" is a known infinitive.
  bool is_verb_root(std::string_view root) const;

  // Indices of morphemes whose surface is a prefix of folded[pos..].
  // Each match is (morpheme index, byte length).
  template <typename Fn>
  void for_each_match(std::string_view folded, std::size_t pos, Fn&& fn) const {
    std::int32_t node = 0;
    for (std::size_t i = pos; i < folded.size(); ++i) {
      node = trie_[node].next[static_cast<unsigned char>(folded[i])];
      if (node == 0) return;
      for (auto idx : trie_[node].terminals) fn(idx, i - pos + 1);
    }
  }

 private:
  struct TrieNode {
    std::array<std::int32_t, 256> next{};
    std::vector<std::uint32_t> terminals;
  };

  std::vector<MorphemeEntry> morphemes_;
  std::vector<VerbEntry> verbs_;
  std::vector<TrieNode> trie_;
  std::unordered_map<std::string, std::size_t> verb_by_infinitive_;
  std::unordered_set<std::string> finite_forms_;
  std::unordered_set<std::string> participles_;
  std::unordered_set<std::string> question_words_;
};

class DuplicateEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Line-based format:
//   M <TAB> surface <TAB> kind <TAB> feature <TAB> 0|1
//   V <TAB> infinitive <TAB> form[,form...] [<TAB> participle]
//   Q <TAB> question-word
// '#' starts a comment line. Throws FormatError with the offending line.
Lexicon parse_lexicon(std::string_view content, const std::string& source_name = "<lexicon>");
Lexicon load_lexicon(const std::string& path);

struct SegmentPart {
  std::string surface;  // as written in the input word
  MorphemeEntry entry;

  bool operator==(const SegmentPart&) const = default;
};

struct Segmentation {
  std::vector<SegmentPart> parts;
  int lexical_count = 0;

  bool operator==(const Segmentation&) const = default;
};

// The word cannot be covered by the lexicon. Means "cannot analyze", not a
// style violation.
class SegmentationError : public Error {
 public:
  using Error::Error;
};

// Minimal-root cover of the word. A cover starts with a root; linking
// elements sit between a root or suffix and a following root; suffixes
// follow a root; the last part is a root or suffix. Among minimal covers the
// one with the longer leftmost parts wins.
std::optional<Segmentation> try_segment(std::string_view word, const Lexicon& lex);
Segmentation segment_compound(std::string_view word, const Lexicon& lex);
int count_lexical_morphemes(std::string_view word, const Lexicon& lex);

enum class FormationPattern {
  conversion,
  ung_nominalization,
  er_or_nominalization,
  hypernym_compound,
  simplex,
  other,
};

std::string_view to_string(FormationPattern pattern);

FormationPattern classify_formation_pattern(std::string_view word, const Lexicon& lex);
FormationPattern classify_segmentation(std::string_view word, const Segmentation& seg,
                                       const Lexicon& lex);

bool is_finite_verb_form(std::string_view token, const Lexicon& lex);
bool is_infinitive_form(std::string_view token, const Lexicon& lex);

}  // namespace clg::morph
