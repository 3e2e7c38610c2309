#include "clg/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include "clg/corpus.hpp"
#include "clg/reuse.hpp"
#include "clg/termbase.hpp"
#include "clg/text.hpp"

namespace clg::report {

using rules::Diagnostic;
using rules::Severity;

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "machine") return OutputFormat::machine;
  return std::nullopt;
}

namespace {

void machine_line(std::ostream& out, const Diagnostic& d) {
  out << d.file << ':' << d.span.start.line << ':' << d.span.start.column << ": " << rules::to_string(d.severity)
      << ' ' << d.rule_id << ' ' << d.message << '\n';
}

// Source line plus "^~~~" under the span's part on that line. Tabs are
// copied so the marker lines up.
void caret_lines(std::ostream& out, const Diagnostic& d, const doc::SourceText& src) {
  const auto line = src.line(d.span.start.line);
  out << "    " << line << '\n';

  std::string marker = "    ";
  std::size_t col = 1;
  std::size_t i = 0;
  while (i < line.size() && col < d.span.start.column) {
    const auto cp = text::decode(line, i);
    marker += line[i] == '\t' ? '\t' : ' ';
    i += cp.length;
    ++col;
  }
  const auto line_begin = d.span.begin - (i);
  const auto span_end_on_line = std::min(d.span.end, line_begin + line.size());
  std::size_t width = 0;
  while (line_begin + i < span_end_on_line) {
    i += text::decode(line, i).length;
    ++width;
  }
  marker += '^';
  if (width > 1) marker.append(width - 1, '~');
  out << marker << '\n';
}

}  // namespace

std::string format_diagnostics(std::span<const Diagnostic> diags, OutputFormat format, const SourceLookup& sources) {
  std::ostringstream out;
  for (const auto& d : diags) {
    machine_line(out, d);
    if (format == OutputFormat::machine) continue;
    if (sources) {
      if (const auto* src = sources(d.file)) caret_lines(out, d, *src);
    }
    if (d.suggestion) out << "    suggestion: " << *d.suggestion << '\n';
  }
  return out.str();
}

EnvLookup process_environment() {
  return [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
}

void resolve_resources(RunConfig& cfg, const EnvLookup& env) {
  auto fill = [&](std::optional<std::string>& slot, const char* var, const char* fallback) {
    if (slot) return;
    if (env) slot = env(var);
    if (!slot && fallback != nullptr) slot = std::string(CLG_DEFAULT_DATA_DIR) + "/" + fallback;
  };
  fill(cfg.lexicon_path, "CLG_LEXICON", "lexicon.tsv");
  fill(cfg.termbase_path, "CLG_TERMBASE", "termbase.tsv");
  fill(cfg.rules_path, "CLG_RULES", nullptr);
}

namespace {

bool has_error(std::span<const Diagnostic> diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string required(const std::optional<std::string>& path, const char* what) {
  if (!path) throw Error(std::string("no ") + what + " configured");
  return *path;
}

}  // namespace

int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.inputs.empty()) {
    err << "clg check: no input files\n";
    return 2;
  }

  std::vector<corpus::FileReport> reports;
  try {
    const auto lex = morph::load_lexicon(required(cfg.lexicon_path, "lexicon"));
    const auto tb = terms::load_termbase(required(cfg.termbase_path, "termbase"));
    const auto rule_cfg = cfg.rules_path ? rules::load_rule_config(*cfg.rules_path) : rules::RuleConfig{};
    const auto files = corpus::collect_input_files(cfg.inputs);
    const auto inputs = corpus::read_inputs(files);
    reports = cfg.serial ? corpus::check_texts_serial(inputs, lex, tb, rule_cfg)
                         : corpus::check_texts(inputs, lex, tb, rule_cfg);
  } catch (const std::exception& e) {
    err << "clg check: " << e.what() << '\n';
    return 2;
  }

  std::vector<Diagnostic> all;
  std::map<std::string, const doc::SourceText*> sources;
  bool failed = false;
  for (const auto& r : reports) {
    if (!r.error.empty()) {
      err << "clg check: " << r.error << '\n';
      failed = true;
      continue;
    }
    sources[r.name] = r.source.get();
    all.insert(all.end(), r.diagnostics.begin(), r.diagnostics.end());
  }

  out << format_diagnostics(all, cfg.format, [&](const std::string& file) -> const doc::SourceText* {
    const auto it = sources.find(file);
    return it == sources.end() ? nullptr : it->second;
  });
  if (failed) return 2;
  return has_error(all) ? 1 : 0;
}

int run_term_lint(const RunConfig& cfg, const std::optional<std::string>& concept_id, std::ostream& out,
                  std::ostream& err) {
  std::string termbase_path;
  std::optional<doc::SourceText> source;
  std::optional<morph::Lexicon> lex;
  std::optional<terms::Termbase> tb;
  try {
    lex = morph::load_lexicon(required(cfg.lexicon_path, "lexicon"));
    termbase_path = required(cfg.termbase_path, "termbase");
    source.emplace(read_file(termbase_path));
    tb = terms::parse_termbase(source->content(), termbase_path);
  } catch (const std::exception& e) {
    err << "clg term-lint: " << e.what() << '\n';
    return 2;
  }

  std::vector<const terms::Concept*> concepts;
  if (concept_id) {
    const auto* c = tb->find_concept(*concept_id);
    if (c == nullptr) {
      err << "clg term-lint: unknown concept '" << *concept_id << "'\n";
      return 2;
    }
    concepts.push_back(c);
  } else {
    for (const auto& c : tb->concepts()) concepts.push_back(&c);
  }

  auto line_span = [&](std::size_t line_no) {
    const auto line = source->line(line_no);
    const auto begin = static_cast<std::size_t>(line.data() - source->content().data());
    return source->span(begin, begin + line.size());
  };
  auto diag = [&](std::string_view rule, Severity sev, std::size_t line_no, const std::string& concept_name,
                  std::string message, std::optional<std::string> suggestion = std::nullopt) {
    return Diagnostic{std::string(rule), sev, termbase_path, line_span(line_no), concept_name, std::move(message),
                      std::move(suggestion)};
  };

  std::vector<Diagnostic> diags;
  const auto integrity = terms::check_concept_integrity(*tb);
  for (const auto* c : concepts) {
    for (const auto& f : integrity) {
      if (f.concept_id == c->id) diags.push_back(diag(lint_id::kIntegrity, Severity::warning, c->source_line, c->id, f.message));
    }

    const auto german = tb->terms_of(c->id, "de");
    if (german.empty()) continue;
    std::vector<terms::Candidate> candidates;
    for (const auto* t : german) candidates.push_back({t->surface, t->feature_focus});
    const auto ranked = terms::evaluate_preferred_term(candidates, c->semantic_class, *lex);

    for (const auto* t : german) {
      if (t->status == terms::TermStatus::deprecated) continue;
      const auto it = std::find_if(ranked.begin(), ranked.end(),
                                   [&](const terms::RankedCandidate& r) { return r.surface == t->surface; });
      for (const auto& f : it->findings) {
        std::string message = "'" + t->surface + "' (" + std::string(terms::to_string(t->status)) + "): ";
        if (f == terms::finding::kPatternMismatch) {
          message += "formation pattern " + std::string(morph::to_string(*it->pattern)) + " does not express class " +
                     std::string(terms::to_string(c->semantic_class));
        } else if (f == terms::finding::kFourMorphemes) {
          message += "4 lexical morphemes; 3 are preferred";
        } else if (f == terms::finding::kTooManyMorphemes) {
          message += std::to_string(*it->lexical_count) + " lexical morphemes; at most 4 allowed";
        } else {
          message += "cannot be analyzed with the lexicon";
        }
        diags.push_back(diag(f, Severity::warning, t->source_line, c->id, std::move(message)));
      }
    }

    const auto* stored = tb->preferred_term(c->id, "de");
    if (stored != nullptr && stored->surface != ranked.front().surface) {
      diags.push_back(diag(lint_id::kMismatch, Severity::error, stored->source_line, c->id,
                           "stored preferred term '" + stored->surface + "' for concept " + c->id +
                               "; the term criteria favor '" + ranked.front().surface + "'",
                           ranked.front().surface));
    }
  }

  rules::sort_diagnostics(diags);
  out << format_diagnostics(diags, cfg.format, [&](const std::string&) { return &*source; });
  return has_error(diags) ? 1 : 0;
}

int run_reuse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.inputs.empty()) {
    err << "clg reuse: no input files\n";
    return 2;
  }
  if (cfg.id_attribute.empty()) {
    err << "clg reuse: empty id attribute\n";
    return 2;
  }

  std::vector<corpus::ParsedFile> parsed;
  try {
    const auto files = corpus::collect_input_files(cfg.inputs);
    const auto inputs = corpus::read_inputs(files);
    parsed = cfg.serial ? corpus::parse_texts_serial(inputs) : corpus::parse_texts(inputs);
  } catch (const std::exception& e) {
    err << "clg reuse: " << e.what() << '\n';
    return 2;
  }

  std::vector<doc::Document> documents;
  for (auto& p : parsed) {
    if (!p.document) {
      err << "clg reuse: " << p.error << '\n';
      return 2;
    }
    documents.push_back(std::move(*p.document));
  }

  const auto stats = cfg.serial ? reuse::compute_reuse_stats_serial(documents, cfg.id_attribute)
                                : reuse::compute_reuse_stats(documents, cfg.id_attribute);
  if (cfg.format == OutputFormat::machine) {
    out << stats.total_instances << ' ' << stats.unique_modules << ' ' << reuse::format_ratio(stats) << '\n';
  } else {
    std::ostringstream ratio;
    ratio.setf(std::ios::fixed);
    ratio.precision(4);
    ratio << stats.reuse_ratio();
    out << "documents:        " << documents.size() << '\n'
        << "module instances: " << stats.total_instances << '\n'
        << "unique modules:   " << stats.unique_modules << '\n'
        << "reuse ratio:      " << reuse::format_ratio(stats) << " (" << ratio.str() << ")\n";
  }
  return 0;
}

}  // namespace clg::report
