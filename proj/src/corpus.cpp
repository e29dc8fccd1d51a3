#include "topiary/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "topiary/error.hpp"
#include "topiary/stemmer.hpp"
#include "topiary/text.hpp"

namespace topiary {

namespace fs = std::filesystem;
using nlohmann::json;

std::unordered_set<std::string> PreprocessConfig::default_abbreviations() {
  return {"mr.",  "mrs.", "ms.",  "dr.",   "prof.", "st.",  "jr.",
          "sr.",  "vs.",  "etc.", "e.g.",  "i.e.",  "inc.", "ltd.",
          "co.",  "corp.", "fig.", "no.",  "rev.",  "gen.", "col.",
          "capt.", "sgt.", "u.s.", "u.k.", "u.n."};
}

int Vocabulary::id_of(const std::string& term) const {
  auto it = term_to_id_.find(term);
  return it == term_to_id_.end() ? -1 : it->second;
}

const std::string& Vocabulary::term_of(int id) const {
  return id_to_term_.at(static_cast<std::size_t>(id));
}

int Vocabulary::intern(const std::string& term) {
  auto [it, inserted] =
      term_to_id_.emplace(term, static_cast<int>(id_to_term_.size()));
  if (inserted) id_to_term_.push_back(term);
  return it->second;
}

long long Corpus::total_tokens() const {
  long long n = 0;
  for (const Document& d : documents) n += static_cast<long long>(d.tokens.size());
  return n;
}

std::uint64_t Corpus::hash() const {
  std::uint64_t h = kFnvOffset;
  h = fnv1a_u64(static_cast<std::uint64_t>(documents.size()), h);
  for (const Document& d : documents) {
    h = fnv1a(d.name, h);
    h = fnv1a_u64(static_cast<std::uint64_t>(d.tokens.size()), h);
    for (int t : d.tokens) h = fnv1a_u64(static_cast<std::uint64_t>(t), h);
  }
  for (const std::string& term : vocabulary.terms()) h = fnv1a(term, h);
  return h;
}

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Word ending at position i (inclusive), lowercased: used for the
// abbreviation check, e.g. "Mr." at the period.
std::string trailing_word(const std::string& text, std::size_t i) {
  std::size_t start = i;
  while (start > 0 &&
         !std::isspace(static_cast<unsigned char>(text[start - 1]))) {
    --start;
  }
  return to_lower_ascii(std::string_view(text).substr(start, i - start + 1));
}

}  // namespace

std::vector<std::string> split_sentences(
    const std::string& text,
    const std::unordered_set<std::string>& abbreviations) {
  std::vector<std::string> out;
  const std::size_t n = text.size();
  std::size_t begin = 0;

  auto emit = [&](std::size_t end) {
    std::size_t a = begin;
    std::size_t b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    if (b > a) out.push_back(text.substr(a, b - a));
    begin = end;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_terminal(text[i])) continue;
    std::size_t last = i;
    while (last + 1 < n && is_terminal(text[last + 1])) ++last;
    if (text[i] == '.' && last == i &&
        abbreviations.count(trailing_word(text, i))) {
      continue;
    }
    std::size_t j = last + 1;
    if (j >= n) {
      emit(n);
      i = last;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[j]))) {
      i = last;
      continue;
    }
    while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= n || std::isupper(static_cast<unsigned char>(text[j]))) {
      emit(last + 1);
    }
    i = last;
  }
  emit(n);
  return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
  return split_sentences(text, PreprocessConfig::default_abbreviations());
}

std::vector<std::string> preprocess(const std::string& text,
                                    const PreprocessConfig& config) {
  std::vector<std::string> out;
  for (std::string& tok : alnum_tokens(strip_urls(text))) {
    if (static_cast<int>(tok.size()) < config.min_token_len) continue;
    bool all_digits = std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
      return std::isdigit(c);
    });
    if (all_digits) continue;
    std::string lowered = to_lower_ascii(tok);
    if (config.stopwords.count(lowered)) continue;
    std::string kept = config.lowercase ? lowered : tok;
    if (config.stem) kept = porter_stem(to_lower_ascii(kept));
    out.push_back(std::move(kept));
  }
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Corpus ingest_directory(const fs::path& dir, const PreprocessConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IngestError("corpus directory not found: " + dir.string());
  }

  struct Entry {
    std::string rel;
    std::string category;
    fs::path path;
  };
  std::vector<Entry> entries;
  for (const auto& item : fs::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".txt") {
      entries.push_back({item.path().filename().string(), "", item.path()});
    } else if (item.is_directory()) {
      std::string category = item.path().filename().string();
      for (const auto& sub : fs::directory_iterator(item.path())) {
        if (sub.is_regular_file() && sub.path().extension() == ".txt") {
          entries.push_back({category + "/" + sub.path().filename().string(),
                             category, sub.path()});
        }
      }
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.rel < b.rel; });
  if (entries.empty()) {
    throw EmptyCorpusError("no .txt documents under " + dir.string());
  }

  Corpus corpus;
  for (const Entry& e : entries) {
    std::string text = read_file(e.path);
    Document doc;
    doc.id = static_cast<int>(corpus.documents.size());
    doc.name = e.rel;
    doc.category = e.category;
    doc.raw_sentences = split_sentences(text, config.abbreviations);
    for (const std::string& tok : preprocess(text, config)) {
      doc.tokens.push_back(corpus.vocabulary.intern(tok));
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.total_tokens() == 0) {
    throw EmptyCorpusError("no usable tokens under " + dir.string());
  }

  std::vector<int> freq(static_cast<std::size_t>(corpus.vocabulary.size()), 0);
  std::vector<int> seen_at(freq.size(), -1);
  for (const Document& d : corpus.documents) {
    for (int t : d.tokens) {
      if (seen_at[static_cast<std::size_t>(t)] != d.id) {
        seen_at[static_cast<std::size_t>(t)] = d.id;
        ++freq[static_cast<std::size_t>(t)];
      }
    }
  }
  corpus.vocabulary.set_doc_freq(std::move(freq));
  return corpus;
}

std::unordered_set<std::string> load_stopwords(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot read stopword file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string word = normalize_phrase(line);
    if (!word.empty()) words.insert(word);
  }
  return words;
}

void save_corpus(const Corpus& corpus, const fs::path& path,
                 const std::string& config_digest) {
  json docs = json::array();
  for (const Document& d : corpus.documents) {
    docs.push_back({{"id", d.id},
                    {"name", d.name},
                    {"category", d.category},
                    {"sentences", d.raw_sentences},
                    {"tokens", d.tokens}});
  }
  json j = {{"format", "topiary-corpus"},
            {"version", 1},
            {"hash", to_hex(corpus.hash())},
            {"documents", docs},
            {"vocabulary",
             {{"terms", corpus.vocabulary.terms()},
              {"doc_freq", corpus.vocabulary.doc_freqs()}}}};
  if (!config_digest.empty()) j["config_digest"] = config_digest;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write corpus file: " + path.string());
  out << j.dump() << '\n';
}

Corpus load_corpus(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read corpus file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("corpus file parse error: " + std::string(e.what()));
  }
  if (j.value("format", "") != "topiary-corpus" || j.value("version", 0) != 1) {
    throw FormatError("unrecognized corpus file: " + path.string());
  }
  Corpus corpus;
  for (const auto& term : j.at("vocabulary").at("terms")) {
    corpus.vocabulary.intern(term.template get<std::string>());
  }
  corpus.vocabulary.set_doc_freq(
      j.at("vocabulary").at("doc_freq").get<std::vector<int>>());
  for (const json& jd : j.at("documents")) {
    Document d;
    d.id = jd.at("id").get<int>();
    d.name = jd.at("name").get<std::string>();
    d.category = jd.at("category").get<std::string>();
    d.raw_sentences = jd.at("sentences").get<std::vector<std::string>>();
    d.tokens = jd.at("tokens").get<std::vector<int>>();
    corpus.documents.push_back(std::move(d));
  }
  if (j.value("hash", "") != to_hex(corpus.hash())) {
    throw FormatError("corpus file hash mismatch: " + path.string());
  }
  return corpus;
}

}  // namespace topiary
