#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topiary/corpus.hpp"
#include "topiary/tagger.hpp"

namespace fixture {

inline std::string data_dir() { return TOPIARY_DATA_DIR; }
inline std::string fixture_dir() { return TOPIARY_FIXTURE_DIR; }
inline std::string mini_dir() { return fixture_dir() + "/mini"; }

inline topiary::PreprocessConfig mini_config() {
  topiary::PreprocessConfig config;
  config.stopwords = topiary::load_stopwords(data_dir() + "/stopwords.txt");
  config.stem = true;
  return config;
}

// Ingested once; every reader sees the same immutable corpus.
inline const topiary::Corpus& mini_corpus() {
  static topiary::Corpus corpus =
      topiary::ingest_directory(mini_dir(), mini_config());
  return corpus;
}

inline const topiary::LexiconTagger& tagger() {
  static topiary::LexiconTagger t =
      topiary::LexiconTagger::from_file(data_dir() + "/lexicon.tsv");
  return t;
}

// Corpus assembled from explicit token streams; raw sentences mirror the
// tokens so document invariants hold.
inline topiary::Corpus make_corpus(
    const std::vector<std::vector<std::string>>& docs) {
  topiary::Corpus corpus;
  for (const auto& words : docs) {
    topiary::Document d;
    d.id = static_cast<int>(corpus.documents.size());
    d.name = "doc" + std::to_string(d.id) + ".txt";
    std::string sentence;
    for (const std::string& w : words) {
      d.tokens.push_back(corpus.vocabulary.intern(w));
      if (!sentence.empty()) sentence += ' ';
      sentence += w;
    }
    if (!sentence.empty()) {
      sentence += '.';
      d.raw_sentences.push_back(sentence);
    }
    corpus.documents.push_back(std::move(d));
  }
  std::vector<int> freq(static_cast<std::size_t>(corpus.vocabulary.size()), 0);
  std::vector<int> seen(freq.size(), -1);
  for (const auto& d : corpus.documents) {
    for (int t : d.tokens) {
      if (seen[static_cast<std::size_t>(t)] != d.id) {
        seen[static_cast<std::size_t>(t)] = d.id;
        ++freq[static_cast<std::size_t>(t)];
      }
    }
  }
  corpus.vocabulary.set_doc_freq(std::move(freq));
  return corpus;
}

// splitmix64: tiny generator for test data, separate from the library RNG.
struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
  }
  int below(int bound) {
    return static_cast<int>(next() % static_cast<std::uint64_t>(bound));
  }
};

// Oracle tokenizer, written separately from the library path: whitespace
// split, strip non-alphanumeric edges, lowercase.
inline std::vector<std::string> oracle_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  auto wordish = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) ||
           static_cast<unsigned char>(c) >= 0x80;
  };
  auto flush = [&] {
    std::size_t a = 0, b = word.size();
    while (a < b && !wordish(word[a])) ++a;
    while (b > a && !wordish(word[b - 1])) --b;
    if (b > a) {
      std::string t = word.substr(a, b - a);
      for (char& c : t) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      out.push_back(t);
    }
    word.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      word.push_back(c);
    }
  }
  flush();
  return out;
}

// Sliding-window phrase count over every raw sentence of the corpus;
// optionally collects the ids of documents containing the phrase.
inline int oracle_term_count(const std::vector<std::string>& words,
                             const topiary::Corpus& corpus,
                             std::set<int>* doc_set = nullptr) {
  int count = 0;
  for (const topiary::Document& d : corpus.documents) {
    for (const std::string& sentence : d.raw_sentences) {
      std::vector<std::string> toks = oracle_tokens(sentence);
      if (toks.size() < words.size()) continue;
      for (std::size_t i = 0; i + words.size() <= toks.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < words.size(); ++j) {
          if (toks[i + j] != words[j]) {
            match = false;
            break;
          }
        }
        if (match) {
          ++count;
          if (doc_set) doc_set->insert(d.id);
        }
      }
    }
  }
  return count;
}

// Planted-topic corpus: 3 topics with disjoint 10-word vocabularies,
// 100 docs of 50 tokens, Zipf-ish word weights inside each topic.
struct Synthetic {
  topiary::Corpus corpus;
  std::vector<std::vector<std::string>> top5;  // per planted topic, by count
};

inline Synthetic synthetic_corpus() {
  const int kTopics = 3;
  const int kWordsPerTopic = 10;
  const int kDocs = 100;
  const int kTokensPerDoc = 50;

  TestRng rng(20260810);
  std::vector<std::vector<std::string>> docs;
  std::vector<std::map<std::string, int>> counts(kTopics);
  for (int d = 0; d < kDocs; ++d) {
    const int topic = d % kTopics;
    std::vector<std::string> words;
    for (int i = 0; i < kTokensPerDoc; ++i) {
      // weight 1/(r+1) over the topic's ten words
      double total = 0.0;
      for (int r = 0; r < kWordsPerTopic; ++r) total += 1.0 / (r + 1);
      double u = rng.uniform() * total;
      int rank = kWordsPerTopic - 1;
      for (int r = 0; r < kWordsPerTopic; ++r) {
        u -= 1.0 / (r + 1);
        if (u < 0) {
          rank = r;
          break;
        }
      }
      char buf[8];
      std::snprintf(buf, sizeof(buf), "w%02d", topic * kWordsPerTopic + rank);
      words.emplace_back(buf);
      ++counts[static_cast<std::size_t>(topic)][buf];
    }
    docs.push_back(std::move(words));
  }

  Synthetic s;
  s.corpus = make_corpus(docs);
  for (int t = 0; t < kTopics; ++t) {
    std::vector<std::pair<int, std::string>> ranked;
    for (const auto& [word, c] : counts[static_cast<std::size_t>(t)]) {
      ranked.emplace_back(-c, word);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> top;
    for (int i = 0; i < 5; ++i) {
      top.push_back(ranked[static_cast<std::size_t>(i)].second);
    }
    s.top5.push_back(std::move(top));
  }
  return s;
}

}  // namespace fixture
