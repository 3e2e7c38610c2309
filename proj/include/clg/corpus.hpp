#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clg/docmodel.hpp"
#include "clg/rules.hpp"

// Corpus-level kernels. Each parallel kernel has a serial twin with the
// same contract; results are always in input order.
namespace clg::corpus {

struct InputText {
  std::string name;
  std::string content;
};

// Expands directories recursively to their *.xml files; returns the sorted,
// de-duplicated file list. Throws IoError for a missing path.
std::vector<std::string> collect_input_files(std::span<const std::string> inputs);

std::vector<InputText> read_inputs(std::span<const std::string> files);

struct ParsedFile {
  std::string name;
  std::optional<doc::Document> document;
  std::string error;  // set when document is empty
};

std::vector<ParsedFile> parse_texts(std::span<const InputText> inputs);
std::vector<ParsedFile> parse_texts_serial(std::span<const InputText> inputs);

struct FileReport {
  std::string name;
  std::shared_ptr<const doc::SourceText> source;  // null on parse failure
  std::vector<rules::Diagnostic> diagnostics;
  std::string error;
};

std::vector<FileReport> check_texts(std::span<const InputText> inputs, const morph::Lexicon& lex,
                                    const terms::Termbase& tb, const rules::RuleConfig& cfg);
std::vector<FileReport> check_texts_serial(std::span<const InputText> inputs, const morph::Lexicon& lex,
                                           const terms::Termbase& tb, const rules::RuleConfig& cfg);

}  // namespace clg::corpus
