#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clg/docmodel.hpp"
#include "clg/rules.hpp"

namespace clg::report {

enum class OutputFormat { text, machine };

std::optional<OutputFormat> parse_format(std::string_view s);

// Source text for a diagnostic's file, or null if unavailable.
using SourceLookup = std::function<const doc::SourceText*(const std::string& file)>;

// machine: "file:line:col: severity rule_id message", one line each.
// text: the same line, then the source line with a caret marker and the
// suggestion, if any.
std::string format_diagnostics(std::span<const rules::Diagnostic> diags, OutputFormat format,
                               const SourceLookup& sources = {});

struct RunConfig {
  std::optional<std::string> lexicon_path;
  std::optional<std::string> termbase_path;
  std::optional<std::string> rules_path;
  OutputFormat format = OutputFormat::text;
  std::vector<std::string> inputs;
  std::string id_attribute = "id";
  bool serial = false;  // use the single-threaded kernels
};

using EnvLookup = std::function<std::optional<std::string>(const char* name)>;

EnvLookup process_environment();

// Fills resource paths not given as flags from CLG_LEXICON, CLG_TERMBASE and
// CLG_RULES, then from the bundled data directory (lexicon and termbase
// only; without a rules file the built-in defaults apply).
void resolve_resources(RunConfig& cfg, const EnvLookup& env);

// Exit codes: 0 clean, 1 at least one error-severity diagnostic, 2 usage,
// IO or parse failure (message on err).
int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Lints each concept's German terms (or one concept). Reports findings on
// preferred and admitted terms and stored preferred terms that differ from
// the computed winner.
int run_term_lint(const RunConfig& cfg, const std::optional<std::string>& concept_id, std::ostream& out,
                  std::ostream& err);

int run_reuse(const RunConfig& cfg, std::ostream& out, std::ostream& err);

namespace lint_id {
inline constexpr std::string_view kMismatch = "TERM-PREFERRED-MISMATCH";
inline constexpr std::string_view kIntegrity = "TERM-INTEGRITY";
}  // namespace lint_id

}  // namespace clg::report
