#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "clg/rules.hpp"
#include "clg/text.hpp"

namespace clg::rules {

using doc::Sentence;
using doc::Terminal;

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.span.start.line, a.span.start.column, a.rule_id, a.span.end, a.message) <
           std::tie(b.span.start.line, b.span.start.column, b.rule_id, b.span.end, b.message);
  });
}

namespace {

// Capitalized pronouns of polite address; never compound nouns.
constexpr std::array<std::string_view, 8> kAddressPronouns = {"sie",   "ihr",   "ihre",  "ihnen",
                                                              "ihren", "ihrem", "ihrer", "ihres"};

constexpr std::array<std::string_view, 7> kWerdenFallback = {"wird",  "werden", "wurde", "wurden",
                                                             "werde", "wirst",  "werdet"};

bool is_werden_form(std::string_view token, const morph::Lexicon& lex) {
  const auto folded = text::fold_case(token);
  if (const auto* werden = lex.find_verb("werden")) {
    return std::find(werden->finite_forms.begin(), werden->finite_forms.end(), folded) != werden->finite_forms.end();
  }
  return std::find(kWerdenFallback.begin(), kWerdenFallback.end(), folded) != kWerdenFallback.end();
}

// ge + at least two code points + t/en, lowercase.
bool looks_like_participle(std::string_view token) {
  if (!token.starts_with("ge")) return false;
  std::size_t tail = 0;
  if (text::ends_with(token, "en")) tail = 2;
  else if (text::ends_with(token, "t")) tail = 1;
  else return false;
  if (token.size() < 2 + tail) return false;
  const auto middle = token.substr(2, token.size() - 2 - tail);
  return text::count_code_points(middle) >= 2 && text::is_alphabetic(middle);
}

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string ending(Terminal t) {
  switch (t) {
    case Terminal::period: return "it ends with '.'";
    case Terminal::exclamation: return "it ends with '!'";
    case Terminal::question: return "it ends with '?'";
    case Terminal::none: return "it has no final punctuation";
  }
  return {};
}

class BlockChecker {
 public:
  BlockChecker(const doc::TextBlock& block, const morph::Lexicon& lex, const terms::Termbase& tb,
               const RuleConfig& cfg, const std::string& file, std::vector<Diagnostic>& out)
      : block_(block), lex_(lex), tb_(tb), cfg_(cfg), file_(file), out_(out), path_(block.path_string()) {}

  void run() {
    sentences_ = doc::split_sentences(block_, cfg_.split);
    if (sentences_.empty()) return;

    if (active(id::kStepImperative)) check_step_imperative();
    for (const auto& s : sentences_) {
      const auto finite = finite_verb_tokens(s, lex_);
      if (active(id::kCauseSafetyEllipsis) && !finite.empty())
        report(id::kCauseSafetyEllipsis, s.tokens[finite.front()].span,
               "hazard cause must be an ellipsis without a finite verb; found " + quote(s.tokens[finite.front()].surface));
      if (active(id::kCauseSafetyExclaim) && s.terminal != Terminal::exclamation)
        report(id::kCauseSafetyExclaim, terminal_or_last(s),
               "hazard cause must end with an exclamation point; " + ending(s.terminal));
      if (active(id::kCauseErrorSentence) && finite.empty())
        report(id::kCauseErrorSentence, s.span, "error cause must be a full sentence with a finite verb");
      if (active(id::kCauseErrorPeriod) && s.terminal != Terminal::period)
        report(id::kCauseErrorPeriod, terminal_or_last(s),
               "error cause must end with a period; " + ending(s.terminal));
      if (active(id::kSymptomNoQuestion)) check_symptom(s, finite);
      if (active(id::kNoPassive)) check_passive(s);
      if (active(id::kMaxTokens) && s.tokens.size() > cfg_.max_tokens)
        report(id::kMaxTokens, s.span,
               "sentence has " + std::to_string(s.tokens.size()) + " tokens; keep it at " +
                   std::to_string(cfg_.max_tokens) + " or fewer");
      check_tokens(s);
    }
  }

 private:
  bool active(std::string_view rule) const {
    const auto& setting = cfg_.setting(rule);
    return setting.severity != Severity::off && setting.selector.matches(block_.element_path);
  }

  void report(std::string_view rule, const doc::SourceSpan& span, std::string message,
              std::optional<std::string> suggestion = std::nullopt, std::optional<Severity> severity = std::nullopt) {
    out_.push_back({std::string(rule), severity.value_or(cfg_.setting(rule).severity), file_, span, path_,
                    std::move(message), std::move(suggestion)});
  }

  static doc::SourceSpan terminal_or_last(const Sentence& s) {
    return s.terminal_span ? *s.terminal_span : s.tokens.back().span;
  }

  void check_step_imperative() {
    const auto& first = sentences_.front();
    const bool ok = first.tokens.size() >= 2 && lex_.is_infinitive(first.tokens[0].surface) &&
                    text::fold_case(first.tokens[1].surface) == "sie";
    if (ok) return;
    const auto& t = first.tokens.front();
    report(id::kStepImperative, t.span,
           "step must begin with the formal imperative (infinitive + 'Sie'); found " + quote(t.surface));
  }

  void check_symptom(const Sentence& s, const std::vector<std::size_t>& finite) {
    std::vector<std::string> reasons;
    if (s.terminal == Terminal::question) reasons.emplace_back("ends with a question mark");
    if (lex_.is_question_word(s.tokens.front().surface))
      reasons.push_back("starts with question word " + quote(s.tokens.front().surface));
    if (finite.empty()) reasons.emplace_back("has no finite verb");
    if (reasons.empty()) return;
    std::string message = "symptom must be a statement with a finite verb; sentence ";
    for (std::size_t i = 0; i < reasons.size(); ++i) message += (i == 0 ? "" : " and ") + reasons[i];
    report(id::kSymptomNoQuestion, s.span, std::move(message));
  }

  void check_passive(const Sentence& s) {
    const auto hit = find_passive(s, lex_);
    if (!hit) return;
    const auto& aux = s.tokens[hit->first];
    const auto& part = s.tokens[hit->second];
    report(id::kNoPassive, block_.source->span(aux.span.begin, part.span.end),
           "avoid passive voice (" + quote(aux.surface) + " ... " + quote(part.surface) + ")");
  }

  // Compound length and terminology, token by token.
  void check_tokens(const Sentence& s) {
    const bool compound = active(id::kCompoundLength);
    const bool skipped = active(id::kAnalysisSkipped);
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (compound || skipped) check_compound(s.tokens[i], i == 0, compound, skipped);
    }
    if (active(id::kTermDeprecated) || active(id::kTermAmbiguous)) check_terms(s);
  }

  void check_compound(const doc::Token& token, bool sentence_initial, bool compound, bool skipped) {
    const auto& word = token.surface;
    if (!text::starts_upper(word) || text::is_all_upper(word)) return;
    const auto folded = text::fold_case(word);
    if (std::find(kAddressPronouns.begin(), kAddressPronouns.end(), folded) != kAddressPronouns.end()) return;

    int count = 0;
    for (auto part : text::split(word, '-')) {
      if (text::is_all_upper(part)) {
        ++count;
        continue;
      }
      const auto n = terms::term_lexical_count(part, lex_);
      if (!n) {
        // Sentence-initial capitals need not be nouns.
        if (skipped && !sentence_initial)
          report(id::kAnalysisSkipped, token.span, "cannot analyze " + quote(word) + " with the lexicon");
        return;
      }
      count += *n;
    }
    if (!compound || count < 4) return;

    const auto& setting = cfg_.setting(id::kCompoundLength);
    if (count > 4) {
      report(id::kCompoundLength, token.span,
             quote(word) + " has " + std::to_string(count) + " lexical morphemes; use at most 4");
    } else {
      report(id::kCompoundLength, token.span, quote(word) + " has 4 lexical morphemes; 3 are preferred",
             std::nullopt, demote(setting.severity));
    }
  }

  void check_terms(const Sentence& s) {
    std::vector<std::string> surfaces;
    surfaces.reserve(s.tokens.size());
    for (const auto& t : s.tokens) surfaces.push_back(t.surface);

    std::map<std::size_t, std::vector<terms::Occurrence>> by_token;
    for (auto& occ : terms::find_occurrences(tb_, surfaces)) by_token[occ.token_index].push_back(std::move(occ));

    for (const auto& [index, hits] : by_token) {
      const auto& token = s.tokens[index];
      std::set<std::string> concepts;
      for (const auto& h : hits) concepts.insert(h.concept_id);

      if (concepts.size() >= 2) {
        if (!active(id::kTermAmbiguous)) continue;
        std::string list;
        for (const auto& h : hits)
          list += (list.empty() ? "" : ", ") + h.concept_id + " (" + std::string(terms::to_string(h.status)) + ")";
        report(id::kTermAmbiguous, token.span, quote(token.surface) + " is ambiguous: " + list);
        continue;
      }

      const bool deprecated = std::all_of(hits.begin(), hits.end(), [](const terms::Occurrence& h) {
        return h.status == terms::TermStatus::deprecated;
      });
      if (!deprecated || !active(id::kTermDeprecated)) continue;

      const auto& concept_id = *concepts.begin();
      std::string message = quote(token.surface) + " is deprecated for concept " + concept_id;
      std::optional<std::string> suggestion;
      if (const auto* preferred = tb_.preferred_term(concept_id, "de")) {
        suggestion = preferred->surface;
        message += "; use " + quote(preferred->surface);
      }
      report(id::kTermDeprecated, token.span, std::move(message), std::move(suggestion));
    }
  }

  const doc::TextBlock& block_;
  const morph::Lexicon& lex_;
  const terms::Termbase& tb_;
  const RuleConfig& cfg_;
  const std::string& file_;
  std::vector<Diagnostic>& out_;
  std::string path_;
  std::vector<Sentence> sentences_;
};

}  // namespace

std::vector<std::size_t> finite_verb_tokens(const Sentence& sentence, const morph::Lexicon& lex) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const auto& surface = sentence.tokens[i].surface;
    if (!lex.is_finite_form(surface)) continue;
    if (i > 0 && text::starts_upper(surface) && lex.is_infinitive(surface)) continue;
    out.push_back(i);
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_passive(const Sentence& sentence, const morph::Lexicon& lex) {
  const auto& tokens = sentence.tokens;
  for (std::size_t w = 0; w < tokens.size(); ++w) {
    if (!is_werden_form(tokens[w].surface, lex)) continue;
    for (std::size_t p = w + 1; p < tokens.size(); ++p) {
      const auto& surface = tokens[p].surface;
      if (lex.is_participle(surface) || (!text::starts_upper(surface) && looks_like_participle(surface)))
        return std::make_pair(w, p);
    }
  }
  return std::nullopt;
}

std::vector<Diagnostic> check_document(const doc::Document& document, const morph::Lexicon& lex,
                                       const terms::Termbase& tb, const RuleConfig& cfg, const std::string& file) {
  std::vector<Diagnostic> out;
  for (const auto& block : doc::extract_text_blocks(document)) BlockChecker(block, lex, tb, cfg, file, out).run();
  sort_diagnostics(out);
  return out;
}

}  // namespace clg::rules
