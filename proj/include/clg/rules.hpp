#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clg/docmodel.hpp"
#include "clg/morphlex.hpp"
#include "clg/termbase.hpp"

namespace clg::rules {

enum class Severity { error, warning, info, off };

std::string_view to_string(Severity s);
std::optional<Severity> parse_severity(std::string_view s);

// One step milder: error -> warning -> info. Used for the preferred-limit
// finding of COMPOUND-LENGTH.
Severity demote(Severity s);

namespace id {
inline constexpr std::string_view kStepImperative = "STEP-IMPERATIVE";
inline constexpr std::string_view kCauseSafetyEllipsis = "CAUSE-SAFETY-ELLIPSIS";
inline constexpr std::string_view kCauseSafetyExclaim = "CAUSE-SAFETY-EXCLAIM";
inline constexpr std::string_view kCauseErrorSentence = "CAUSE-ERROR-SENTENCE";
inline constexpr std::string_view kCauseErrorPeriod = "CAUSE-ERROR-PERIOD";
inline constexpr std::string_view kSymptomNoQuestion = "SYMPTOM-NO-QUESTION";
inline constexpr std::string_view kNoPassive = "NO-PASSIVE";
inline constexpr std::string_view kCompoundLength = "COMPOUND-LENGTH";
inline constexpr std::string_view kTermDeprecated = "TERM-DEPRECATED";
inline constexpr std::string_view kTermAmbiguous = "TERM-AMBIGUOUS";
inline constexpr std::string_view kMaxTokens = "MAX-TOKENS";
inline constexpr std::string_view kAnalysisSkipped = "ANALYSIS-SKIPPED";
}  // namespace id

// Element-path suffix pattern. "safetyadvice/cause" matches any path ending
// in those two names; a "*" segment matches any single element, so "*"
// alone matches every path.
class Selector {
 public:
  Selector() = default;
  explicit Selector(std::string_view pattern);

  bool matches(std::span<const std::string> path) const;
  const std::string& pattern() const { return pattern_; }

  bool operator==(const Selector& o) const { return pattern_ == o.pattern_; }

 private:
  std::string pattern_;
  std::vector<std::string> segments_;
};

struct RuleInfo {
  std::string_view id;
  std::string_view selector;
  Severity severity;
  std::string_view summary;
};

std::span<const RuleInfo> builtin_rules();
bool is_builtin_rule(std::string_view rule_id);

struct RuleSetting {
  Selector selector;
  Severity severity = Severity::off;
};

class RuleConfig {
 public:
  RuleConfig();  // built-in defaults

  const RuleSetting& setting(std::string_view rule_id) const;
  // Throws std::invalid_argument for an unknown rule id.
  void set(std::string_view rule_id, RuleSetting setting);

  // Sentence length above which MAX-TOKENS reports.
  std::size_t max_tokens = 12;
  doc::SplitOptions split;

 private:
  std::map<std::string, RuleSetting, std::less<>> settings_;
};

// Lines: rule_id <TAB> selector <TAB> severity [<TAB> threshold]. Fields
// may also be separated by spaces. The threshold column is accepted for
// MAX-TOKENS only. Throws FormatError.
RuleConfig parse_rule_config(std::string_view content, const std::string& source_name = "<rules>");
RuleConfig load_rule_config(const std::string& path);

struct Diagnostic {
  std::string rule_id;
  Severity severity = Severity::error;
  std::string file;
  doc::SourceSpan span;
  std::string element_path;
  std::string message;
  std::optional<std::string> suggestion;

  bool operator==(const Diagnostic&) const = default;
};

// Orders by (line, column, rule id), then span end and message.
void sort_diagnostics(std::vector<Diagnostic>& diags);

std::vector<Diagnostic> check_document(const doc::Document& document, const morph::Lexicon& lex,
                                       const terms::Termbase& tb, const RuleConfig& cfg, const std::string& file);

// Finite verbs of a sentence. A capitalized non-initial infinitive reads as
// a conversion noun ("beim Wenden"), not a plural verb form.
std::vector<std::size_t> finite_verb_tokens(const doc::Sentence& sentence, const morph::Lexicon& lex);

// (werden form, participle) token indices, if the sentence matches the
// werden-passive pattern.
std::optional<std::pair<std::size_t, std::size_t>> find_passive(const doc::Sentence& sentence,
                                                                const morph::Lexicon& lex);

}  // namespace clg::rules
