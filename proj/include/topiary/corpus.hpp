#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topiary {

struct PreprocessConfig {
  std::unordered_set<std::string> stopwords;
  bool stem = false;
  int min_token_len = 2;
  bool lowercase = true;
  // Tokens (with trailing period) that never end a sentence.
  std::unordered_set<std::string> abbreviations = default_abbreviations();

  static std::unordered_set<std::string> default_abbreviations();
};

struct Document {
  int id = 0;
  std::string name;                        // relative file path
  std::string category;                    // subdirectory name, may be empty
  std::vector<std::string> raw_sentences;  // original casing, verbatim
  std::vector<int> tokens;                 // vocabulary ids, preprocessed
};

class Vocabulary {
 public:
  int id_of(const std::string& term) const;  // -1 if absent
  const std::string& term_of(int id) const;
  int doc_freq(int id) const { return doc_freq_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(id_to_term_.size()); }

  int intern(const std::string& term);  // assigns the next id on first sight
  void set_doc_freq(std::vector<int> freq) { doc_freq_ = std::move(freq); }
  const std::vector<std::string>& terms() const { return id_to_term_; }
  const std::vector<int>& doc_freqs() const { return doc_freq_; }

 private:
  std::unordered_map<std::string, int> term_to_id_;
  std::vector<std::string> id_to_term_;
  std::vector<int> doc_freq_;
};

struct Corpus {
  std::vector<Document> documents;
  Vocabulary vocabulary;

  int doc_count() const { return static_cast<int>(documents.size()); }
  long long total_tokens() const;

  /// Fingerprint over document names, token streams and vocabulary,
  /// recorded in model manifests to detect a swapped corpus.
  std::uint64_t hash() const;
};

/// Sentence boundaries: terminal . ! ? followed by whitespace and an
/// uppercase letter, or end of text. Abbreviations do not split.
std::vector<std::string> split_sentences(
    const std::string& text,
    const std::unordered_set<std::string>& abbreviations);

std::vector<std::string> split_sentences(const std::string& text);

/// Lowercases, strips URLs/symbols/digit-only tokens, drops stopwords
/// and short tokens, then stems if configured.
std::vector<std::string> preprocess(const std::string& text,
                                    const PreprocessConfig& config);

/// Reads every .txt file under `dir` (optionally nested one level as
/// category/doc.txt) in lexicographic order.
Corpus ingest_directory(const std::filesystem::path& dir,
                        const PreprocessConfig& config);

std::unordered_set<std::string> load_stopwords(
    const std::filesystem::path& path);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 const std::string& config_digest = "");
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace topiary
