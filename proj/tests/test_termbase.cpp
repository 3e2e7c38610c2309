#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace clg;
using namespace clg::terms;
using clg::morph::Feature;
using clg::test::seed_lexicon;
using clg::test::seed_termbase;

namespace {

const char* const kSmall =
    "C\tK1\tpart\tfirst\n"
    "C\tK2\tprocess\tsecond\n"
    "C\tK3\tdevice\tthird\n"
    "R\tK1\thypernym\tK2\n"
    "T\tK1\tde\tFeuchtreibwalze\tpreferred\tfunction\n"
    "T\tK1\tde\tChromwalze\tdeprecated\tmaterial\n"
    "T\tK1\ten\tdampener roller\tpreferred\n"
    "T\tK2\tde\tWenden\tpreferred\n"
    "T\tK2\tde\tWendung\tdeprecated\n"
    "T\tK3\tde\tWendung\tpreferred\n"
    "T\tK3\ten\tperfecting unit\tpreferred\n";

std::vector<std::string> ranked_surfaces(const std::vector<RankedCandidate>& r) {
  std::vector<std::string> out;
  for (const auto& c : r) out.push_back(c.surface);
  return out;
}

}  // namespace

TEST_CASE("load and integrity") {
  SUBCASE("3 concepts, 7 terms") {
    const auto tb = parse_termbase(
        "C\tA\tpart\ta\nC\tB\tother\tb\nC\tC\tprocess\tc\n"
        "T\tA\tde\tWalze\tpreferred\nT\tA\ten\troller\tpreferred\nT\tB\tde\tTank\tpreferred\n"
        "T\tB\ten\ttank\tpreferred\nT\tC\tde\tWenden\tpreferred\nT\tC\tde\tWendung\tdeprecated\n"
        "T\tC\ten\tperfecting\tpreferred\n");
    CHECK(tb.concepts().size() == 3);
    CHECK(tb.terms().size() == 7);
  }
  SUBCASE("two preferred German terms") {
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\nT\tK\tde\tRolle\tpreferred\n"),
                    IntegrityError);
  }
  SUBCASE("two preferred terms in different languages are fine") {
    CHECK_NOTHROW(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\nT\tK\ten\troller\tpreferred\n"));
  }
  SUBCASE("dangling relation") {
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nR\tK\tpart-of\tMISSING\nT\tK\tde\tWalze\tpreferred\n"),
                    IntegrityError);
  }
  SUBCASE("concept without German term") {
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\ten\troller\tpreferred\n"), IntegrityError);
  }
  SUBCASE("term on unknown concept") {
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\nT\tZ\tde\tTank\tpreferred\n"),
                    FormatError);
  }
  SUBCASE("malformed records") {
    CHECK_THROWS_AS(parse_termbase("C\tK\tgizmo\tx\n"), FormatError);
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\n"), FormatError);
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\tdeu\tWalze\tpreferred\n"), FormatError);
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tbest\n"), FormatError);
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\tcolour\n"), FormatError);
    CHECK_THROWS_AS(parse_termbase("C\tK\tpart\tx\nC\tK\tpart\ty\n"), FormatError);
  }
  SUBCASE("missing German preferred is a finding, not a load error") {
    const auto tb = parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tadmitted\n");
    const auto f = check_concept_integrity(tb);
    REQUIRE(f.size() == 1);
    CHECK(f[0].kind == IntegrityFinding::Kind::no_german_preferred);
  }
  SUBCASE("seed termbase is clean") { CHECK(check_concept_integrity(seed_termbase()).empty()); }
  SUBCASE("builder-level findings") {
    Termbase tb;
    tb.add_concept({"K", SemanticClass::part, "x", {}});
    tb.add_relation("K", {RelationKind::part_of, "NOPE"});
    const auto f = check_concept_integrity(tb);
    const auto has = [&](IntegrityFinding::Kind k) {
      return std::any_of(f.begin(), f.end(), [&](const IntegrityFinding& x) { return x.kind == k; });
    };
    CHECK(has(IntegrityFinding::Kind::dangling_relation));
    CHECK(has(IntegrityFinding::Kind::no_german_term));
  }
}

TEST_CASE("round trip") {
  const auto tb = parse_termbase(kSmall);
  CHECK(parse_termbase(serialize_termbase(tb)) == tb);
  CHECK(parse_termbase(serialize_termbase(seed_termbase())) == seed_termbase());

  test::TempDir dir;
  const auto path = dir.path() + "/tb.tsv";
  save_termbase(seed_termbase(), path);
  CHECK(load_termbase(path) == seed_termbase());
}

TEST_CASE("serialization rejects fields that cannot round-trip") {
  Termbase tb;
  tb.add_concept({"K", SemanticClass::part, "with\ttab", {}});
  tb.add_term({"K", "de", "Walze", TermStatus::preferred, std::nullopt});
  CHECK_THROWS(serialize_termbase(tb));
}

TEST_CASE("property: round trip on generated termbases") {
  std::mt19937 rng(3);
  const std::vector<std::string> langs = {"de", "en", "fr", "nl", "ru", "sv", "es"};
  for (int round = 0; round < 50; ++round) {
    Termbase tb;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int c = 0; c < n; ++c)
      tb.add_concept({"K" + std::to_string(c), static_cast<SemanticClass>(rng() % 4), "def " + std::to_string(rng()), {}});
    for (int c = 0; c < n; ++c) {
      if (rng() % 3 == 0) tb.add_relation("K" + std::to_string(c), {static_cast<RelationKind>(rng() % 3), "K" + std::to_string(rng() % n)});
      for (const auto& lang : langs) {
        if (lang != "de" && rng() % 2) continue;
        const int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
          const auto status = t == 0 ? TermStatus::preferred : static_cast<TermStatus>(1 + rng() % 2);
          std::optional<Feature> feat;
          if (rng() % 2) feat = static_cast<Feature>(rng() % 7);
          tb.add_term({"K" + std::to_string(c), lang, "Term" + std::to_string(rng() % 50) + "ä", status, feat});
        }
      }
    }
    CHECK(parse_termbase(serialize_termbase(tb)) == tb);
  }
}

TEST_CASE("lookup") {
  const auto& tb = seed_termbase();
  const std::set<TermHit> damp = {{"C-roller-damp", TermStatus::preferred}};
  CHECK(lookup(tb, "Feuchtreibwalze") == damp);
  CHECK(lookup(tb, "feuchtreibwalze") == damp);
  CHECK(lookup(tb, "Feuchtreibwalzen") == damp);
  CHECK(lookup(tb, "Zylinderkopf").empty());
  CHECK(lookup(tb, "roller", "en") == std::set<TermHit>{{"C-roller", TermStatus::preferred}});
  CHECK(lookup(tb, "roller", "de").empty());
}

TEST_CASE("ambiguity") {
  SUBCASE("Wendung names two concepts") {
    const auto amb = detect_ambiguous_terms(parse_termbase(kSmall));
    REQUIRE(amb.size() == 1);
    CHECK(amb[0].surface == "wendung");
    CHECK(amb[0].concept_ids == std::vector<std::string>{"K2", "K3"});
  }
  SUBCASE("unique surfaces") {
    CHECK(detect_ambiguous_terms(parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\n")).empty());
  }
  SUBCASE("same concept twice is not ambiguous") {
    CHECK(detect_ambiguous_terms(
              parse_termbase("C\tK\tpart\tx\nT\tK\tde\tWalze\tpreferred\nT\tK\ten\tWalze\tdeprecated\n"))
              .empty());
  }
  SUBCASE("property: exactly the index keys with two or more concepts, sorted") {
    const auto& tb = seed_termbase();
    std::vector<std::string> expect;
    for (const auto& [key, idx] : tb.index()) {
      std::set<std::string> ids;
      for (auto i : idx) ids.insert(tb.terms()[i].concept_id);
      if (ids.size() >= 2) expect.push_back(key);
    }
    std::vector<std::string> got;
    for (const auto& a : detect_ambiguous_terms(tb)) got.push_back(a.surface);
    CHECK(got == expect);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::find(got.begin(), got.end(), "wendung") != got.end());
  }
}

TEST_CASE("occurrences") {
  const auto& tb = seed_termbase();
  const std::vector<std::string> s1 = {"Die", "Chromwalze", "reinigen"};
  const auto hits = find_occurrences(tb, s1);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == Occurrence{1, "C-roller-damp", TermStatus::deprecated});

  const std::vector<std::string> none = {"Das", "ist", "gut"};
  CHECK(find_occurrences(tb, none).empty());

  const std::vector<std::string> amb = {"Die", "Wendung"};
  const auto w = find_occurrences(tb, amb);
  REQUIRE(w.size() == 2);
  CHECK(w[0].concept_id != w[1].concept_id);
}

TEST_CASE("preferred-term ranking") {
  const auto& lex = seed_lexicon();
  SUBCASE("feature rank: function over material") {
    const std::vector<Candidate> c = {{"Chromwalze", Feature::material}, {"Feuchtreibwalze", Feature::function}};
    CHECK(evaluate_preferred_term(c, SemanticClass::part, lex).front().surface == "Feuchtreibwalze");
  }
  SUBCASE("conversion for a process") {
    const std::vector<Candidate> c = {{"Wendung", std::nullopt}, {"Wenden", std::nullopt}};
    const auto r = evaluate_preferred_term(c, SemanticClass::process, lex);
    CHECK(r.front().surface == "Wenden");
    CHECK(r.back().findings == std::vector<std::string>{std::string(finding::kPatternMismatch)});
  }
  SUBCASE("hypernym compound for a part") {
    const std::vector<Candidate> c = {{"Farbreiber", Feature::function}, {"Farbreibwalze", Feature::function}};
    CHECK(evaluate_preferred_term(c, SemanticClass::part, lex).front().surface == "Farbreibwalze");
  }
  SUBCASE("ung or er-or for a device") {
    const std::vector<Candidate> c = {{"Wenden", std::nullopt}, {"Wendung", std::nullopt}};
    CHECK(evaluate_preferred_term(c, SemanticClass::device, lex).front().surface == "Wendung");
  }
  SUBCASE("single candidate keeps its findings") {
    const std::vector<Candidate> c = {{"Farbwerkwalzenschutzvorrichtung", std::nullopt}};
    const auto r = evaluate_preferred_term(c, SemanticClass::part, lex);
    REQUIRE(r.size() == 1);
    CHECK(r[0].lexical_count == 5);
    CHECK(std::find(r[0].findings.begin(), r[0].findings.end(), std::string(finding::kTooManyMorphemes)) !=
          r[0].findings.end());
  }
  SUBCASE("length tiers: 3 beats 4, over 4 loses to anything segmentable") {
    const std::vector<Candidate> c = {{"Farbwerkwalzenschutzvorrichtung", Feature::function},
                                      {"Farbwerkschutzwalze", Feature::object},
                                      {"Farbschutzwalze", Feature::none}};
    const auto r = evaluate_preferred_term(c, SemanticClass::part, lex);
    CHECK(ranked_surfaces(r) ==
          std::vector<std::string>{"Farbschutzwalze", "Farbwerkschutzwalze", "Farbwerkwalzenschutzvorrichtung"});
    CHECK(r[1].findings == std::vector<std::string>{std::string(finding::kFourMorphemes)});
  }
  SUBCASE("unsegmentable candidates rank last") {
    const std::vector<Candidate> c = {{"Qwertwalze", Feature::function}, {"Chromwalze", Feature::material}};
    const auto r = evaluate_preferred_term(c, SemanticClass::part, lex);
    CHECK(r.back().surface == "Qwertwalze");
    CHECK(r.back().findings == std::vector<std::string>{std::string(finding::kUnsegmentable)});
  }
  SUBCASE("class other expects nothing") {
    const std::vector<Candidate> c = {{"Walze", std::nullopt}};
    CHECK(evaluate_preferred_term(c, SemanticClass::other, lex).front().findings.empty());
  }
  SUBCASE("empty list") { CHECK_THROWS_AS(evaluate_preferred_term({}, SemanticClass::part, lex), std::invalid_argument); }
}

TEST_CASE("property: ranking is independent of input order") {
  const auto& lex = seed_lexicon();
  std::vector<Candidate> pool;
  for (const auto& t : seed_termbase().terms())
    if (t.language == "de") pool.push_back({t.surface, t.feature_focus});
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Candidate> pick(pool.begin(), pool.begin() + 2 + static_cast<long>(rng() % 6));
    const auto cls = static_cast<SemanticClass>(rng() % 4);
    const auto ref = ranked_surfaces(evaluate_preferred_term(pick, cls, lex));
    for (int p = 0; p < 5; ++p) {
      std::shuffle(pick.begin(), pick.end(), rng);
      CHECK(ranked_surfaces(evaluate_preferred_term(pick, cls, lex)) == ref);
    }
  }
}

TEST_CASE("lexical count of conversions uses the stem") {
  const auto& lex = seed_lexicon();
  CHECK(term_lexical_count("Wenden", lex) == 1);
  CHECK(term_lexical_count("Reinigen", lex) == 1);
  CHECK(term_lexical_count("Chromwalze", lex) == 2);
  CHECK_FALSE(term_lexical_count("Qwert", lex).has_value());
}
