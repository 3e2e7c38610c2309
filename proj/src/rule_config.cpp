#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>

#include "clg/rules.hpp"
#include "clg/text.hpp"

namespace clg::rules {

namespace {

constexpr std::array<RuleInfo, 12> kRules = {{
    {id::kStepImperative, "action/step", Severity::error, "step starts with infinitive + 'Sie'"},
    {id::kCauseSafetyEllipsis, "safetyadvice/cause", Severity::error, "hazard cause has no finite verb"},
    {id::kCauseSafetyExclaim, "safetyadvice/cause", Severity::error, "hazard cause ends with '!'"},
    {id::kCauseErrorSentence, "errordescription/cause", Severity::error, "error cause is a full sentence"},
    {id::kCauseErrorPeriod, "errordescription/cause", Severity::error, "error cause ends with '.'"},
    {id::kSymptomNoQuestion, "symptom", Severity::error, "symptom is a statement with a finite verb"},
    {id::kNoPassive, "*", Severity::warning, "avoid werden-passive"},
    {id::kCompoundLength, "*", Severity::error, "compound nouns have at most 4 lexical morphemes"},
    {id::kTermDeprecated, "*", Severity::error, "deprecated term used"},
    {id::kTermAmbiguous, "*", Severity::info, "term maps to several concepts"},
    {id::kMaxTokens, "cause", Severity::info, "cause sentences are short"},
    {id::kAnalysisSkipped, "*", Severity::info, "word could not be analyzed"},
}};

constexpr std::array<std::pair<Severity, std::string_view>, 4> kSeverityNames = {{
    {Severity::error, "error"},
    {Severity::warning, "warning"},
    {Severity::info, "info"},
    {Severity::off, "off"},
}};

}  // namespace

std::string_view to_string(Severity s) {
  for (const auto& [v, name] : kSeverityNames)
    if (v == s) return name;
  return "?";
}

std::optional<Severity> parse_severity(std::string_view s) {
  for (const auto& [v, name] : kSeverityNames)
    if (name == s) return v;
  return std::nullopt;
}

Severity demote(Severity s) {
  switch (s) {
    case Severity::error: return Severity::warning;
    case Severity::warning: return Severity::info;
    default: return s;
  }
}

Selector::Selector(std::string_view pattern) : pattern_(pattern) {
  for (auto seg : text::split(pattern, '/')) {
    if (seg.empty()) throw std::invalid_argument("empty segment in selector '" + std::string(pattern) + "'");
    segments_.emplace_back(seg);
  }
}

bool Selector::matches(std::span<const std::string> path) const {
  if (segments_.empty() || segments_.size() > path.size()) return false;
  const auto offset = path.size() - segments_.size();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i] != "*" && segments_[i] != path[offset + i]) return false;
  }
  return true;
}

std::span<const RuleInfo> builtin_rules() { return kRules; }

bool is_builtin_rule(std::string_view rule_id) {
  return std::any_of(kRules.begin(), kRules.end(), [&](const RuleInfo& r) { return r.id == rule_id; });
}

RuleConfig::RuleConfig() {
  for (const auto& r : kRules) settings_.emplace(std::string(r.id), RuleSetting{Selector(r.selector), r.severity});
}

const RuleSetting& RuleConfig::setting(std::string_view rule_id) const {
  const auto it = settings_.find(rule_id);
  if (it == settings_.end()) throw std::invalid_argument("unknown rule id '" + std::string(rule_id) + "'");
  return it->second;
}

void RuleConfig::set(std::string_view rule_id, RuleSetting setting) {
  const auto it = settings_.find(rule_id);
  if (it == settings_.end()) throw std::invalid_argument("unknown rule id '" + std::string(rule_id) + "'");
  it->second = std::move(setting);
}

RuleConfig parse_rule_config(std::string_view content, const std::string& source_name) {
  RuleConfig cfg;
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  std::size_t line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      throw FormatError(FormatError::Kind::malformed, source_name, line_no, what);
    };

    const auto fields = text::split_fields(line);
    if (fields.size() != 3 && fields.size() != 4) fail("expected: rule_id selector severity [threshold]");
    if (!is_builtin_rule(fields[0])) fail("unknown rule id '" + std::string(fields[0]) + "'");
    const auto severity = parse_severity(fields[2]);
    if (!severity) fail("invalid severity '" + std::string(fields[2]) + "'");

    RuleSetting setting;
    try {
      setting.selector = Selector(fields[1]);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    setting.severity = *severity;
    cfg.set(fields[0], std::move(setting));

    if (fields.size() == 4) {
      if (fields[0] != id::kMaxTokens) fail("only MAX-TOKENS takes a threshold");
      std::size_t value = 0;
      const auto* first = fields[3].data();
      const auto* last = first + fields[3].size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last || value == 0) fail("threshold must be a positive integer");
      cfg.max_tokens = value;
    }
  }
  return cfg;
}

RuleConfig load_rule_config(const std::string& path) { return parse_rule_config(read_file(path), path); }

}  // namespace clg::rules
