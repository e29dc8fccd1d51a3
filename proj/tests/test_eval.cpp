#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "topiary/error.hpp"
#include "topiary/eval.hpp"

using namespace topiary;

namespace {

std::vector<Concept> concepts_of(const std::vector<std::string>& phrases) {
  std::vector<Concept> out;
  for (const std::string& p : phrases) {
    Concept c;
    c.phrase = p;
    c.corpus_count = 1;
    c.doc_set = {0};
    out.push_back(std::move(c));
  }
  return out;
}

GoldSet gold_of(const std::vector<std::string>& phrases) {
  GoldSet g;
  g.phrases.insert(phrases.begin(), phrases.end());
  return g;
}

}  // namespace

TEST_CASE("evaluate: exact mode set arithmetic") {
  auto extracted = concepts_of({"a b", "c d", "e f"});
  auto gold = gold_of({"c d", "e f", "g h"});
  EvalReport r = evaluate(extracted, gold, MatchMode::Exact);
  CHECK(r.tp == 2);
  CHECK(r.fp == 1);
  CHECK(r.fn == 1);
  CHECK(r.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0));

  // bookkeeping identities
  CHECK(r.tp + r.fp == 3);
  CHECK(r.tp + r.fn == 3);
}

TEST_CASE("evaluate: identity and disjoint cases") {
  auto extracted = concepts_of({"a b", "c d"});
  EvalReport same = evaluate(extracted, gold_of({"a b", "c d"}),
                             MatchMode::Exact);
  CHECK(same.precision == doctest::Approx(1.0));
  CHECK(same.recall == doctest::Approx(1.0));
  CHECK(same.f1 == doctest::Approx(1.0));

  EvalReport none = evaluate(extracted, gold_of({"x y", "z w"}),
                             MatchMode::Exact);
  CHECK(none.precision == doctest::Approx(0.0));
  CHECK(none.recall == doctest::Approx(0.0));
  CHECK(none.f1 == doctest::Approx(0.0));
}

TEST_CASE("evaluate: duplicates and case fold before comparison") {
  auto extracted = concepts_of({"Web  Search", "web search"});
  EvalReport r = evaluate(extracted, gold_of({"web search"}),
                          MatchMode::Exact);
  CHECK(r.tp == 1);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
}

TEST_CASE("evaluate: empty extraction gives zeros") {
  EvalReport r = evaluate({}, gold_of({"a b"}), MatchMode::Exact);
  CHECK(r.tp == 0);
  CHECK(r.fp == 0);
  CHECK(r.fn == 1);
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
}

TEST_CASE("evaluate: harmonic mean identity") {
  auto extracted = concepts_of({"a b", "c d", "e f", "g h", "i j"});
  auto gold = gold_of({"a b", "c d", "x y"});
  EvalReport r = evaluate(extracted, gold, MatchMode::Exact);
  CHECK(std::abs(r.f1 * (r.precision + r.recall) -
                 2.0 * r.precision * r.recall) <= 1e-12);
}

TEST_CASE("evaluate: token-overlap mode") {
  // shares two tokens in reversed order
  EvalReport swapped = evaluate(concepts_of({"engine search"}),
                                gold_of({"search engine"}),
                                MatchMode::TokenOverlap);
  CHECK(swapped.tp == 1);

  // containment one way
  EvalReport contained = evaluate(concepts_of({"google search engine"}),
                                  gold_of({"search engine"}),
                                  MatchMode::TokenOverlap);
  CHECK(contained.tp == 1);

  // single shared token, no containment: no match
  EvalReport weak = evaluate(concepts_of({"web search"}),
                             gold_of({"search engine"}),
                             MatchMode::TokenOverlap);
  CHECK(weak.tp == 0);
  CHECK(weak.fp == 1);
  CHECK(weak.fn == 1);

  // each gold phrase is consumed at most once
  EvalReport greedy = evaluate(concepts_of({"web search", "search web"}),
                               gold_of({"web search"}),
                               MatchMode::TokenOverlap);
  CHECK(greedy.tp == 1);
  CHECK(greedy.fp == 1);
  CHECK(greedy.fn == 0);
}

TEST_CASE("evaluate: exact mode is insensitive to input order") {
  auto forward = concepts_of({"a b", "c d", "e f"});
  auto backward = concepts_of({"e f", "c d", "a b"});
  auto gold = gold_of({"c d", "g h"});
  EvalReport r1 = evaluate(forward, gold, MatchMode::Exact);
  EvalReport r2 = evaluate(backward, gold, MatchMode::Exact);
  CHECK(r1.tp == r2.tp);
  CHECK(r1.fp == r2.fp);
  CHECK(r1.fn == r2.fn);
}

TEST_CASE("evaluate: empty gold errors") {
  CHECK_THROWS_AS(evaluate(concepts_of({"a b"}), GoldSet{}, MatchMode::Exact),
                  EvalError);
}

TEST_CASE("load_gold: normalization, comments, dedupe") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() /
                  ("topiary_gold_" + std::to_string(::getpid()) + ".txt");
  {
    std::ofstream out(path);
    out << "Web Search\n# note\nsearch   engine\nweb search\n\n";
  }
  GoldSet g = load_gold(path);
  CHECK(g.phrases == std::set<std::string>{"web search", "search engine"});

  {
    std::ofstream out(path, std::ios::trunc);
    out << "# only comments\n\n";
  }
  CHECK_THROWS_AS(load_gold(path), EvalError);
  fs::remove(path);
  CHECK_THROWS_AS(load_gold(path), EvalError);
}

TEST_CASE("match_mode_from_string") {
  CHECK(match_mode_from_string("exact") == MatchMode::Exact);
  CHECK(match_mode_from_string("token-overlap") == MatchMode::TokenOverlap);
  CHECK_THROWS_AS(match_mode_from_string("fuzzy"), EvalError);
}
