#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topiary/corpus.hpp"
#include "topiary/lda.hpp"
#include "topiary/tagger.hpp"

namespace topiary {

/// Top-K documents of one topic with term statistics over their
/// preprocessed token streams.
struct TopicDocumentCluster {
  int topic = 0;
  std::vector<int> doc_ids;  // descending theta, ties by ascending id
  std::map<std::string, int> term_counts;
  long long total_terms = 0;
  std::map<std::string, int> docs_containing;
};

struct ScoredTerm {
  std::string term;
  int topic = 0;
  double n_tf = 0.0;   // count(term in cluster) / total cluster terms
  double i_tf = 0.0;   // total cluster terms / docs containing term
  double tf_itf = 0.0;  // n_tf * i_tf
};

struct ConceptCandidate {
  std::vector<std::string> words;  // lowercased, 2..max_len, noun-final
  std::vector<PosTag> pattern;
  int source_topic = 0;    // first topic that produced it
  std::set<int> topics;    // all topics that produced it
  int term_count = 0;
};

struct Concept {
  std::string phrase;  // words joined by single spaces
  std::set<int> topics;
  int corpus_count = 0;
  std::set<int> doc_set;
};

struct ExtractionParams {
  int cluster_size = 50;  // K
  int top_terms = 10;     // n
  int max_len = 3;        // 2 or 3
  bool log_itf = false;   // i_tf = log(total/docs) instead of total/docs
};

std::vector<TopicDocumentCluster> build_clusters(const TopicModel& model,
                                                 const Corpus& corpus, int K);

/// Errors if the term does not occur in the cluster.
ScoredTerm tfitf(const TopicDocumentCluster& cluster, const std::string& term,
                 bool log_itf = false);

/// Top-n by descending tf-itf, ties by ascending term.
std::vector<ScoredTerm> rank_terms(const TopicDocumentCluster& cluster, int n,
                                   bool log_itf = false);

/// Raw sentences from the cluster's documents containing at least one of
/// the terms; a token matches a term by its folded surface or its Porter
/// stem, so stemmed vocabularies still hit the original text.
std::vector<std::pair<int, std::string>> extract_sentences(
    const TopicDocumentCluster& cluster, const Corpus& corpus,
    const std::vector<ScoredTerm>& terms);

/// Contiguous windows of 2..max_len noun/adjective tokens ending in a
/// noun. Duplicate phrases collapse; their topic sets merge.
std::vector<ConceptCandidate> generate_candidates(
    const std::vector<TaggedSentence>& tagged, int max_len);

/// Case-insensitive contiguous occurrences of the word sequence over all
/// raw sentences of the corpus.
int term_count(const ConceptCandidate& candidate, const Corpus& corpus);

/// Full pipeline: clusters -> tf-itf ranking -> sentence extraction ->
/// tagging -> candidates -> term-count filter.
std::vector<Concept> extract_concepts(const TopicModel& model,
                                      const Corpus& corpus,
                                      const PosTagger& tagger,
                                      const ExtractionParams& params);

void save_concepts_json(const std::vector<Concept>& concepts,
                        const std::filesystem::path& path,
                        const std::string& config_digest);
void save_concepts_text(const std::vector<Concept>& concepts,
                        const std::filesystem::path& path,
                        const std::string& config_digest);
std::vector<Concept> load_concepts_json(const std::filesystem::path& path);

}  // namespace topiary
