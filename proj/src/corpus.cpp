#include "clg/corpus.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <set>

namespace clg::corpus {

namespace fs = std::filesystem;

std::vector<std::string> collect_input_files(std::span<const std::string> inputs) {
  std::set<std::string> files;
  for (const auto& input : inputs) {
    std::error_code ec;
    const fs::path p(input);
    if (fs::is_directory(p, ec)) {
      for (auto it = fs::recursive_directory_iterator(p, ec); !ec && it != fs::recursive_directory_iterator();
           it.increment(ec)) {
        if (it->is_regular_file(ec) && it->path().extension() == ".xml") files.insert(it->path().string());
      }
      if (ec) throw IoError("cannot traverse " + input + ": " + ec.message());
    } else if (fs::is_regular_file(p, ec)) {
      files.insert(p.string());
    } else {
      throw IoError("no such file or directory: " + input);
    }
  }
  return {files.begin(), files.end()};
}

std::vector<InputText> read_inputs(std::span<const std::string> files) {
  std::vector<InputText> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back({f, read_file(f)});
  return out;
}

namespace {

ParsedFile parse_one(const InputText& input) {
  ParsedFile out{input.name, std::nullopt, {}};
  try {
    out.document = doc::parse_document(input.content);
  } catch (const std::exception& e) {
    out.error = input.name + ":" + e.what();
  }
  return out;
}

FileReport check_one(const InputText& input, const morph::Lexicon& lex, const terms::Termbase& tb,
                     const rules::RuleConfig& cfg) {
  FileReport report{input.name, nullptr, {}, {}};
  try {
    const auto document = doc::parse_document(input.content);
    report.source = document.source;
    report.diagnostics = rules::check_document(document, lex, tb, cfg, input.name);
  } catch (const std::exception& e) {
    report.error = input.name + ":" + e.what();
  }
  return report;
}

}  // namespace

std::vector<ParsedFile> parse_texts_serial(std::span<const InputText> inputs) {
  std::vector<ParsedFile> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(parse_one(in));
  return out;
}

std::vector<ParsedFile> parse_texts(std::span<const InputText> inputs) {
  std::vector<ParsedFile> out(inputs.size());
  const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[i] = parse_one(inputs[i]);
  return out;
}

std::vector<FileReport> check_texts_serial(std::span<const InputText> inputs, const morph::Lexicon& lex,
                                           const terms::Termbase& tb, const rules::RuleConfig& cfg) {
  std::vector<FileReport> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(check_one(in, lex, tb, cfg));
  return out;
}

std::vector<FileReport> check_texts(std::span<const InputText> inputs, const morph::Lexicon& lex,
                                    const terms::Termbase& tb, const rules::RuleConfig& cfg) {
  std::vector<FileReport> out(inputs.size());
  const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[i] = check_one(inputs[i], lex, tb, cfg);
  return out;
}

}  // namespace clg::corpus
