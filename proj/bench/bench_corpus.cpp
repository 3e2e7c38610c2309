// Serial vs OpenMP timings for corpus checking and reuse counting on a
// synthetic corpus.
//   bench_corpus [files] [modules-per-file] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "clg/corpus.hpp"
#include "clg/reuse.hpp"

namespace {

const char* const kSteps[] = {
    "Reinigen Sie die Feuchtreibwalze mit einem Tuch.",
    "Die Chromwalze wird vom Bediener geprüft.",
    "Prüfen Sie die Farbwerkwalzenschutzvorrichtung.",
    "Drehen Sie das Zahnrad.",
    "Schalten Sie die Pumpe ab.",
};
const char* const kCauses[] = {
    "Kein Öl im Tank",
    "Der Tank ist leer.",
    "Das Manometer zeigt keinen Druck.",
};

std::vector<clg::corpus::InputText> make_corpus(int files, int modules, std::mt19937& rng) {
  std::uniform_int_distribution<int> step(0, 4), cause(0, 2), id(0, modules * 2);
  std::vector<clg::corpus::InputText> out;
  for (int f = 0; f < files; ++f) {
    std::string xml = "<manual>\n";
    for (int m = 0; m < modules; ++m) {
      xml += "<module id=\"M" + std::to_string(id(rng)) + "\"><action>";
      for (int s = 0; s < 3; ++s) xml += std::string("<step>") + kSteps[step(rng)] + "</step>";
      xml += "</action><errordescription><symptom>Die Pumpe läuft nicht.</symptom><cause>";
      xml += kCauses[cause(rng)];
      xml += "</cause></errordescription></module>\n";
    }
    xml += "</manual>\n";
    out.push_back({"f" + std::to_string(f) + ".xml", std::move(xml)});
  }
  return out;
}

template <typename F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int files = argc > 1 ? std::atoi(argv[1]) : 200;
  const int modules = argc > 2 ? std::atoi(argv[2]) : 20;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  const auto lex = clg::morph::load_lexicon(std::string(CLG_DEFAULT_DATA_DIR) + "/lexicon.tsv");
  const auto tb = clg::terms::load_termbase(std::string(CLG_DEFAULT_DATA_DIR) + "/termbase.tsv");
  const clg::rules::RuleConfig cfg;
  std::mt19937 rng(42);
  const auto corpus = make_corpus(files, modules, rng);

  std::vector<clg::doc::Document> docs;
  for (auto& p : clg::corpus::parse_texts(corpus)) docs.push_back(std::move(*p.document));

  std::size_t sink = 0;
  const double check_serial =
      best_ms(repeats, [&] { sink += clg::corpus::check_texts_serial(corpus, lex, tb, cfg).size(); });
  const double check_parallel = best_ms(repeats, [&] { sink += clg::corpus::check_texts(corpus, lex, tb, cfg).size(); });
  const double reuse_serial =
      best_ms(repeats, [&] { sink += clg::reuse::compute_reuse_stats_serial(docs, "id").total_instances; });
  const double reuse_parallel =
      best_ms(repeats, [&] { sink += clg::reuse::compute_reuse_stats(docs, "id").total_instances; });

  std::cout << "threads " << omp_get_max_threads() << ", files " << files << ", modules/file " << modules << '\n';
  std::cout << "check  serial " << check_serial << " ms  parallel " << check_parallel << " ms  speedup "
            << check_serial / check_parallel << '\n';
  std::cout << "reuse  serial " << reuse_serial << " ms  parallel " << reuse_parallel << " ms  speedup "
            << reuse_serial / reuse_parallel << '\n';
  return sink == 0 ? 1 : 0;
}
