#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clg/report.hpp"

namespace {

struct Options {
  std::optional<std::string> lexicon;
  std::optional<std::string> termbase;
  std::optional<std::string> rules;
  std::string format = "text";
  bool serial = false;
};

void add_resource_flags(CLI::App* cmd, Options& o, bool with_rules) {
  cmd->add_option("--lexicon", o.lexicon, "Morpheme lexicon (default: $CLG_LEXICON or bundled)");
  cmd->add_option("--termbase", o.termbase, "Termbase (default: $CLG_TERMBASE or bundled)");
  if (with_rules) cmd->add_option("--rules", o.rules, "Rule configuration (default: $CLG_RULES or built-in)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  cmd->add_flag("--serial", o.serial, "Run single-threaded");
}

clg::report::RunConfig make_config(const Options& o, std::vector<std::string> inputs) {
  clg::report::RunConfig cfg;
  cfg.lexicon_path = o.lexicon;
  cfg.termbase_path = o.termbase;
  cfg.rules_path = o.rules;
  cfg.format = *clg::report::parse_format(o.format);
  cfg.inputs = std::move(inputs);
  cfg.serial = o.serial;
  clg::report::resolve_resources(cfg, clg::report::process_environment());
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled-language checker for German technical documentation"};
  app.require_subcommand(1);

  Options check_opts;
  std::vector<std::string> check_inputs;
  auto* check = app.add_subcommand("check", "Check XML documents against the writing rules");
  add_resource_flags(check, check_opts, true);
  add_output_flags(check, check_opts);
  check->add_option("inputs", check_inputs, "XML files or directories")->required();

  Options lint_opts;
  std::optional<std::string> concept_id;
  auto* lint = app.add_subcommand("term-lint", "Check termbase entries against the term criteria");
  add_resource_flags(lint, lint_opts, false);
  add_output_flags(lint, lint_opts);
  lint->add_option("--concept", concept_id, "Only this concept");

  Options reuse_opts;
  std::vector<std::string> reuse_inputs;
  std::string id_attribute = "id";
  auto* reuse = app.add_subcommand("reuse", "Report module reuse across documents");
  add_output_flags(reuse, reuse_opts);
  reuse->add_option("--id-attribute", id_attribute, "Attribute carrying the module id");
  reuse->add_option("inputs", reuse_inputs, "XML files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (check->parsed()) return clg::report::run_check(make_config(check_opts, check_inputs), std::cout, std::cerr);
  if (lint->parsed()) return clg::report::run_term_lint(make_config(lint_opts, {}), concept_id, std::cout, std::cerr);
  auto cfg = make_config(reuse_opts, reuse_inputs);
  cfg.id_attribute = id_attribute;
  return clg::report::run_reuse(cfg, std::cout, std::cerr);
}
