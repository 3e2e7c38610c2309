#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "clg/docmodel.hpp"
#include "clg/morphlex.hpp"
#include "clg/rules.hpp"
#include "clg/termbase.hpp"

namespace clg::test {

inline std::string data_path(const std::string& name) { return std::string(CLG_DEFAULT_DATA_DIR) + "/" + name; }

inline const morph::Lexicon& seed_lexicon() {
  static const morph::Lexicon lex = morph::load_lexicon(data_path("lexicon.tsv"));
  return lex;
}

inline const terms::Termbase& seed_termbase() {
  static const terms::Termbase tb = terms::load_termbase(data_path("termbase.tsv"));
  return tb;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("clg-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

// Document with one text block at the given element path ("a/b").
inline std::string wrap(const std::string& path, const std::string& text) {
  std::string open, close;
  std::size_t start = 0;
  std::vector<std::string> names;
  while (start <= path.size()) {
    const auto slash = path.find('/', start);
    names.push_back(path.substr(start, slash == std::string::npos ? std::string::npos : slash - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  for (const auto& n : names) open += "<" + n + ">";
  for (auto it = names.rbegin(); it != names.rend(); ++it) close += "</" + *it + ">";
  return "<doc>" + open + text + close + "</doc>";
}

inline std::vector<rules::Diagnostic> check(const std::string& xml, const rules::RuleConfig& cfg = {}) {
  return rules::check_document(doc::parse_document(xml), seed_lexicon(), seed_termbase(), cfg, "t.xml");
}

inline std::vector<std::string> rule_ids(const std::vector<rules::Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) out.push_back(d.rule_id);
  return out;
}

}  // namespace clg::test
