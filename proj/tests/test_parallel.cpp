#include <random>

#include "clg/corpus.hpp"
#include "clg/reuse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace clg;

namespace {

const std::vector<std::string> kBlocks = {
    "<safetyadvice><cause>Liegengebliebenes Werkzeug führt zu Maschinenschaden.</cause></safetyadvice>",
    "<errordescription><cause>Kein Kraftstoff im Tank.</cause></errordescription>",
    "<action><step>Die Taste drücken.</step><step>Drücken Sie die Taste.</step></action>",
    "<p>Die Chromwalze wird gereinigt.</p>",
    "<symptom>Warum fährt der Mastarm nicht hoch?</symptom>",
    "<p>Die Farbwerkwalzenschutzvorrichtung und die Wendung.</p>",
};

std::vector<corpus::InputText> make_corpus(std::mt19937& rng, int files) {
  std::vector<corpus::InputText> out;
  for (int f = 0; f < files; ++f) {
    std::string xml = "<manual>\n";
    for (int m = 0; m < 1 + static_cast<int>(rng() % 6); ++m)
      xml += "<module id=\"M" + std::to_string(rng() % 10) + "\">" + kBlocks[rng() % kBlocks.size()] + "</module>\n";
    if (rng() % 10 == 0) xml += "<broken>";
    out.push_back({"f" + std::to_string(f) + ".xml", xml + "</manual>\n"});
  }
  return out;
}

}  // namespace

TEST_CASE("parallel kernels equal their serial references") {
  std::mt19937 rng(41);
  const rules::RuleConfig cfg;
  for (int round = 0; round < 10; ++round) {
    const auto corpus = make_corpus(rng, 1 + static_cast<int>(rng() % 40));
    const auto par = corpus::check_texts(corpus, test::seed_lexicon(), test::seed_termbase(), cfg);
    const auto ser = corpus::check_texts_serial(corpus, test::seed_lexicon(), test::seed_termbase(), cfg);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].name == corpus[i].name);
      CHECK(par[i].name == ser[i].name);
      CHECK(par[i].diagnostics == ser[i].diagnostics);
      CHECK(par[i].error == ser[i].error);
    }

    const auto pp = corpus::parse_texts(corpus);
    const auto ps = corpus::parse_texts_serial(corpus);
    std::vector<doc::Document> docs;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      CHECK(pp[i].error == ps[i].error);
      CHECK(pp[i].document.has_value() == ps[i].document.has_value());
      if (pp[i].document) docs.push_back(*pp[i].document);
    }
    CHECK(reuse::compute_reuse_stats(docs) == reuse::compute_reuse_stats_serial(docs));
  }
}

TEST_CASE("collect_input_files") {
  test::TempDir dir;
  dir.write("b.xml", "<a/>");
  dir.write("sub/a.xml", "<a/>");
  dir.write("sub/c.txt", "x");
  const auto b = dir.path() + "/b.xml";
  const std::vector<std::string> inputs = {dir.path(), b};
  const auto files = corpus::collect_input_files(inputs);
  CHECK(files == std::vector<std::string>{b, dir.path() + "/sub/a.xml"});
  const std::vector<std::string> missing = {dir.path() + "/nope"};
  CHECK_THROWS_AS(corpus::collect_input_files(missing), IoError);
}
