#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "topiary/corpus.hpp"
#include "topiary/error.hpp"
#include "topiary/text.hpp"

using namespace topiary;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("topiary_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("split_sentences: terminal punctuation with uppercase follow") {
  auto got = split_sentences("Spam rises. Users complain.");
  REQUIRE(got.size() == 2);
  CHECK(got[0] == "Spam rises.");
  CHECK(got[1] == "Users complain.");
}

TEST_CASE("split_sentences: empty input") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   \n\t ").empty());
}

TEST_CASE("split_sentences: abbreviations do not split") {
  std::unordered_set<std::string> abbrev{"mr."};
  auto got = split_sentences("Mr. Smith codes.", abbrev);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == "Mr. Smith codes.");

  // without the abbreviation entry the same text splits
  auto split = split_sentences("Mr. Smith codes.", {});
  REQUIRE(split.size() == 2);
  CHECK(split[0] == "Mr.");
}

TEST_CASE("split_sentences: lowercase continuation does not split") {
  auto got = split_sentences("It costs 3.50 for entry. the end is lowercase.");
  REQUIRE(got.size() == 1);
}

TEST_CASE("split_sentences: exclamation and question marks") {
  auto got = split_sentences("Really?! Yes. What now?");
  REQUIRE(got.size() == 3);
  CHECK(got[0] == "Really?!");
  CHECK(got[1] == "Yes.");
  CHECK(got[2] == "What now?");
}

TEST_CASE("split_sentences: concatenation preserves non-whitespace content") {
  const std::string texts[] = {
      "Spam rises. Users complain.",
      "One two three",
      "Mr. Smith codes. Dr. Jones tests. Done!",
      "A first line.\n\nA new paragraph starts here. And ends.",
      "No terminal punctuation at all",
  };
  for (const std::string& text : texts) {
    CAPTURE(text);
    std::string joined;
    for (const auto& s : split_sentences(text)) joined += s;
    CHECK(strip_ws(joined) == strip_ws(text));
  }
}

TEST_CASE("preprocess: urls, symbols and stopwords are stripped") {
  PreprocessConfig config;
  config.stopwords = {"for"};
  auto got = preprocess("Visit http://x.com for Virus-free software!", config);
  REQUIRE(got.size() == 4);
  CHECK(got[0] == "visit");
  CHECK(got[1] == "virus");
  CHECK(got[2] == "free");
  CHECK(got[3] == "software");
}

TEST_CASE("preprocess: stemming applies to the token stream") {
  PreprocessConfig config;
  config.stem = true;
  auto got = preprocess("running runs", config);
  REQUIRE(got.size() == 2);
  CHECK(got[0] == "run");
  CHECK(got[1] == "run");
}

TEST_CASE("preprocess: all stopwords gives empty stream") {
  PreprocessConfig config;
  config.stopwords = {"a", "an", "the"};
  CHECK(preprocess("a an the", config).empty());
}

TEST_CASE("preprocess: digit-only and short tokens go away") {
  PreprocessConfig config;
  auto got = preprocess("In 2004 the mp3 player x cost 99", config);
  // "x" falls below min_token_len, "2004"/"99" are digit-only
  CHECK(got == std::vector<std::string>{"in", "the", "mp3", "player", "cost"});
}

TEST_CASE("ingest_directory: flat layout") {
  TempDir dir("flat");
  write_file(dir.path / "a.txt", "The web search engine.");
  write_file(dir.path / "b.txt", "Web users.");
  PreprocessConfig config;
  config.stopwords = {"the"};

  Corpus corpus = ingest_directory(dir.path, config);
  REQUIRE(corpus.doc_count() == 2);
  CHECK(corpus.documents[0].name == "a.txt");
  CHECK(corpus.documents[0].category.empty());
  CHECK(corpus.vocabulary.id_of("web") >= 0);
  CHECK(corpus.vocabulary.id_of("search") >= 0);
  CHECK(corpus.vocabulary.id_of("engine") >= 0);
  CHECK(corpus.vocabulary.id_of("users") >= 0);
  CHECK(corpus.vocabulary.id_of("the") == -1);
  CHECK(corpus.vocabulary.doc_freq(corpus.vocabulary.id_of("web")) == 2);
}

TEST_CASE("ingest_directory: bbc layout sets the category") {
  TempDir dir("bbc");
  write_file(dir.path / "business" / "001.txt", "Shares rose sharply.");
  write_file(dir.path / "tech" / "001.txt", "The web search engine.");
  Corpus corpus = ingest_directory(dir.path, PreprocessConfig{});
  REQUIRE(corpus.doc_count() == 2);
  CHECK(corpus.documents[0].name == "business/001.txt");
  CHECK(corpus.documents[0].category == "business");
  CHECK(corpus.documents[1].category == "tech");
}

TEST_CASE("ingest_directory: empty directory errors") {
  TempDir dir("empty");
  CHECK_THROWS_AS(ingest_directory(dir.path, PreprocessConfig{}),
                  EmptyCorpusError);
}

TEST_CASE("ingest_directory: missing directory errors") {
  CHECK_THROWS_AS(
      ingest_directory("/nonexistent/nowhere", PreprocessConfig{}),
      IngestError);
}

TEST_CASE("ingest_directory: deterministic across repeat runs") {
  TempDir dir("repeat");
  write_file(dir.path / "a.txt", "Alpha beta gamma. Beta again.");
  write_file(dir.path / "b.txt", "Gamma delta. Alpha!");
  PreprocessConfig config;
  Corpus one = ingest_directory(dir.path, config);
  Corpus two = ingest_directory(dir.path, config);
  REQUIRE(one.doc_count() == two.doc_count());
  CHECK(one.hash() == two.hash());
  for (int d = 0; d < one.doc_count(); ++d) {
    CHECK(one.documents[d].tokens == two.documents[d].tokens);
    CHECK(one.documents[d].raw_sentences == two.documents[d].raw_sentences);
  }
  CHECK(one.vocabulary.terms() == two.vocabulary.terms());
}

TEST_CASE("ingest_directory: invariants on the bundled mini corpus") {
  PreprocessConfig config;
  config.stopwords = load_stopwords(std::string(TOPIARY_DATA_DIR) +
                                    "/stopwords.txt");
  config.stem = true;
  Corpus corpus =
      ingest_directory(std::string(TOPIARY_FIXTURE_DIR) + "/mini", config);
  CHECK(corpus.doc_count() == 50);
  CHECK(corpus.documents[0].category == "business");

  // every token id maps to a term with doc_freq >= 1
  for (const Document& d : corpus.documents) {
    REQUIRE(!d.tokens.empty());
    REQUIRE(!d.raw_sentences.empty());
    for (int t : d.tokens) {
      REQUIRE(t >= 0);
      REQUIRE(t < corpus.vocabulary.size());
      CHECK(corpus.vocabulary.doc_freq(t) >= 1);
    }
  }

  // no stopword survives preprocessing; checked on the surface stream,
  // since a stem may coincide with a stopword string ("finding" -> "find")
  PreprocessConfig surface = config;
  surface.stem = false;
  Corpus unstemmed =
      ingest_directory(std::string(TOPIARY_FIXTURE_DIR) + "/mini", surface);
  for (const std::string& term : unstemmed.vocabulary.terms()) {
    CHECK(surface.stopwords.count(term) == 0);
  }

  // doc_freq agrees with a recount
  std::vector<int> freq(static_cast<std::size_t>(corpus.vocabulary.size()), 0);
  for (const Document& d : corpus.documents) {
    std::set<int> distinct(d.tokens.begin(), d.tokens.end());
    for (int t : distinct) ++freq[static_cast<std::size_t>(t)];
  }
  CHECK(freq == corpus.vocabulary.doc_freqs());
}

TEST_CASE("corpus cache round-trips losslessly") {
  TempDir dir("cache");
  write_file(dir.path / "x" / "a.txt", "The cat sat. The dog ran!");
  write_file(dir.path / "y" / "b.txt", "Dogs and cats. Cats sleep.");
  PreprocessConfig config;
  config.stem = true;
  Corpus corpus = ingest_directory(dir.path, config);

  const fs::path cache = dir.path / "corpus.json";
  save_corpus(corpus, cache);
  Corpus loaded = load_corpus(cache);
  CHECK(loaded.hash() == corpus.hash());
  REQUIRE(loaded.doc_count() == corpus.doc_count());
  for (int d = 0; d < corpus.doc_count(); ++d) {
    CHECK(loaded.documents[d].name == corpus.documents[d].name);
    CHECK(loaded.documents[d].category == corpus.documents[d].category);
    CHECK(loaded.documents[d].tokens == corpus.documents[d].tokens);
    CHECK(loaded.documents[d].raw_sentences ==
          corpus.documents[d].raw_sentences);
  }
  CHECK(loaded.vocabulary.terms() == corpus.vocabulary.terms());
  CHECK(loaded.vocabulary.doc_freqs() == corpus.vocabulary.doc_freqs());
}

TEST_CASE("load_stopwords: comments and blanks are skipped") {
  TempDir dir("stop");
  write_file(dir.path / "stop.txt", "# comment\nthe\n\n  An  \nof # inline\n");
  auto words = load_stopwords(dir.path / "stop.txt");
  CHECK(words.size() == 3);
  CHECK(words.count("the") == 1);
  CHECK(words.count("an") == 1);
  CHECK(words.count("of") == 1);
}
