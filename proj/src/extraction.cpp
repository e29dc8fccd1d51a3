#include "topiary/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "topiary/error.hpp"
#include "topiary/stemmer.hpp"
#include "topiary/text.hpp"

namespace topiary {

using nlohmann::json;

std::vector<TopicDocumentCluster> build_clusters(const TopicModel& model,
                                                 const Corpus& corpus, int K) {
  if (K < 1) throw Error("cluster size must be >= 1");
  if (corpus.vocabulary.size() != model.vocab_size ||
      corpus.doc_count() != model.doc_count) {
    throw Error("corpus does not match the model");
  }
  const int T = model.params.topics;
  const int M = model.doc_count;
  const int take = std::min(K, M);
  const std::vector<std::vector<double>> th = theta(model);

  std::vector<TopicDocumentCluster> clusters;
  clusters.reserve(static_cast<std::size_t>(T));
  std::vector<int> order(static_cast<std::size_t>(M));
  for (int t = 0; t < T; ++t) {
    TopicDocumentCluster c;
    c.topic = t;
    for (int d = 0; d < M; ++d) order[static_cast<std::size_t>(d)] = d;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double ta = th[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)];
      double tb = th[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)];
      if (ta != tb) return ta > tb;
      return a < b;
    });
    c.doc_ids.assign(order.begin(), order.begin() + take);

    for (int d : c.doc_ids) {
      std::unordered_set<int> seen;
      for (int w : corpus.documents[static_cast<std::size_t>(d)].tokens) {
        const std::string& term = corpus.vocabulary.term_of(w);
        ++c.term_counts[term];
        ++c.total_terms;
        if (seen.insert(w).second) ++c.docs_containing[term];
      }
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

ScoredTerm tfitf(const TopicDocumentCluster& cluster, const std::string& term,
                 bool log_itf) {
  auto docs_it = cluster.docs_containing.find(term);
  if (docs_it == cluster.docs_containing.end() || docs_it->second == 0) {
    throw Error("term not present in cluster: " + term);
  }
  ScoredTerm s;
  s.term = term;
  s.topic = cluster.topic;
  const double total = static_cast<double>(cluster.total_terms);
  s.n_tf = cluster.term_counts.at(term) / total;
  const double ratio = total / docs_it->second;
  s.i_tf = log_itf ? std::log(ratio) : ratio;
  s.tf_itf = s.n_tf * s.i_tf;
  return s;
}

std::vector<ScoredTerm> rank_terms(const TopicDocumentCluster& cluster, int n,
                                   bool log_itf) {
  if (n < 1) throw Error("rank_terms needs n >= 1");
  std::vector<ScoredTerm> scored;
  scored.reserve(cluster.term_counts.size());
  for (const auto& [term, count] : cluster.term_counts) {
    scored.push_back(tfitf(cluster, term, log_itf));
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredTerm& a, const ScoredTerm& b) {
              if (a.tf_itf != b.tf_itf) return a.tf_itf > b.tf_itf;
              return a.term < b.term;
            });
  if (static_cast<int>(scored.size()) > n) {
    scored.resize(static_cast<std::size_t>(n));
  }
  return scored;
}

namespace {

bool token_matches_term(const std::string& folded_token,
                        const std::string& term) {
  return folded_token == term || porter_stem(folded_token) == term;
}

}  // namespace

std::vector<std::pair<int, std::string>> extract_sentences(
    const TopicDocumentCluster& cluster, const Corpus& corpus,
    const std::vector<ScoredTerm>& terms) {
  if (terms.empty()) throw Error("extract_sentences needs at least one term");
  std::vector<std::pair<int, std::string>> out;
  for (int d : cluster.doc_ids) {
    const Document& doc = corpus.documents[static_cast<std::size_t>(d)];
    for (const std::string& sentence : doc.raw_sentences) {
      bool hit = false;
      for (const std::string& raw : surface_tokens(sentence)) {
        const std::string folded = to_lower_ascii(raw);
        for (const ScoredTerm& t : terms) {
          if (token_matches_term(folded, t.term)) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      if (hit) out.emplace_back(d, sentence);
    }
  }
  return out;
}

std::vector<ConceptCandidate> generate_candidates(
    const std::vector<TaggedSentence>& tagged, int max_len) {
  if (max_len < 2 || max_len > 3) throw Error("max_len must be 2 or 3");
  std::vector<ConceptCandidate> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const TaggedSentence& sentence : tagged) {
    const auto& toks = sentence.tokens;
    const std::size_t n = toks.size();
    for (std::size_t start = 0; start < n; ++start) {
      for (int len = 2; len <= max_len; ++len) {
        const std::size_t end = start + static_cast<std::size_t>(len);
        if (end > n) break;
        bool ok = true;
        for (std::size_t i = start; i < end; ++i) {
          const PosTag tag = toks[i].tag;
          if (!(is_noun(tag) || is_adjective(tag))) {
            ok = false;
            break;
          }
        }
        if (!ok || !is_noun(toks[end - 1].tag)) continue;

        ConceptCandidate cand;
        for (std::size_t i = start; i < end; ++i) {
          cand.words.push_back(to_lower_ascii(toks[i].surface));
          cand.pattern.push_back(toks[i].tag);
        }
        const std::string phrase = join_words(cand.words);
        auto [it, inserted] = index.emplace(phrase, out.size());
        if (inserted) {
          cand.source_topic = sentence.source_topic;
          cand.topics.insert(sentence.source_topic);
          out.push_back(std::move(cand));
        } else {
          out[it->second].topics.insert(sentence.source_topic);
        }
      }
    }
  }
  return out;
}

namespace {

// Lowercased surface token streams, one per raw sentence.
std::vector<std::vector<std::string>> folded_sentences(const Document& doc) {
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.raw_sentences.size());
  for (const std::string& s : doc.raw_sentences) {
    std::vector<std::string> toks = surface_tokens(s);
    for (std::string& t : toks) t = to_lower_ascii(t);
    out.push_back(std::move(toks));
  }
  return out;
}

struct PhraseStats {
  int count = 0;
  std::set<int> doc_set;
};

// One pass over the corpus counting every phrase in `phrases` at once.
std::unordered_map<std::string, PhraseStats> count_phrases(
    const Corpus& corpus, const std::unordered_set<std::string>& phrases,
    int max_len) {
  std::unordered_map<std::string, PhraseStats> stats;
  for (const Document& doc : corpus.documents) {
    for (const auto& toks : folded_sentences(doc)) {
      const std::size_t n = toks.size();
      for (std::size_t start = 0; start < n; ++start) {
        std::string window = toks[start];
        for (int len = 2; len <= max_len; ++len) {
          const std::size_t end = start + static_cast<std::size_t>(len);
          if (end > n) break;
          window += ' ';
          window += toks[end - 1];
          if (phrases.count(window)) {
            PhraseStats& ps = stats[window];
            ++ps.count;
            ps.doc_set.insert(doc.id);
          }
        }
      }
    }
  }
  return stats;
}

}  // namespace

int term_count(const ConceptCandidate& candidate, const Corpus& corpus) {
  if (candidate.words.empty()) return 0;
  const std::string phrase = normalize_phrase(join_words(candidate.words));
  const int len = static_cast<int>(candidate.words.size());
  auto stats = count_phrases(corpus, {phrase}, len);
  auto it = stats.find(phrase);
  return it == stats.end() ? 0 : it->second.count;
}

std::vector<Concept> extract_concepts(const TopicModel& model,
                                      const Corpus& corpus,
                                      const PosTagger& tagger,
                                      const ExtractionParams& params) {
  if (params.cluster_size < 1 || params.top_terms < 1) {
    throw Error("extraction parameters out of range");
  }
  const std::vector<TopicDocumentCluster> clusters =
      build_clusters(model, corpus, params.cluster_size);

  std::vector<TaggedSentence> tagged;
  for (const TopicDocumentCluster& cluster : clusters) {
    const std::vector<ScoredTerm> terms =
        rank_terms(cluster, params.top_terms, params.log_itf);
    if (terms.empty()) continue;
    for (const auto& [doc_id, sentence] :
         extract_sentences(cluster, corpus, terms)) {
      if (surface_tokens(sentence).empty()) continue;
      TaggedSentence ts = tagger.tag_sentence(sentence);
      ts.source_doc = doc_id;
      ts.source_topic = cluster.topic;
      tagged.push_back(std::move(ts));
    }
  }

  std::vector<ConceptCandidate> candidates =
      generate_candidates(tagged, params.max_len);

  std::unordered_set<std::string> phrases;
  for (const ConceptCandidate& c : candidates) {
    phrases.insert(join_words(c.words));
  }
  const auto stats = count_phrases(corpus, phrases, params.max_len);

  std::vector<Concept> concepts;
  for (ConceptCandidate& cand : candidates) {
    const std::string phrase = join_words(cand.words);
    auto it = stats.find(phrase);
    cand.term_count = it == stats.end() ? 0 : it->second.count;
    if (cand.term_count <= 0) continue;  // zero count: not a concept
    Concept c;
    c.phrase = phrase;
    c.topics = cand.topics;
    c.corpus_count = cand.term_count;
    c.doc_set = it->second.doc_set;
    concepts.push_back(std::move(c));
  }
  return concepts;
}

void save_concepts_json(const std::vector<Concept>& concepts,
                        const std::filesystem::path& path,
                        const std::string& config_digest) {
  json arr = json::array();
  for (const Concept& c : concepts) {
    arr.push_back({{"phrase", c.phrase},
                   {"topics", c.topics},
                   {"corpus_count", c.corpus_count},
                   {"doc_ids", c.doc_set}});
  }
  json j = {{"format", "topiary-concepts"},
            {"version", 1},
            {"config_digest", config_digest},
            {"concepts", arr}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write concepts file: " + path.string());
  out << j.dump(2) << '\n';
}

void save_concepts_text(const std::vector<Concept>& concepts,
                        const std::filesystem::path& path,
                        const std::string& config_digest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write concepts file: " + path.string());
  out << "# config_digest: " << config_digest << '\n';
  for (const Concept& c : concepts) out << c.phrase << '\n';
}

std::vector<Concept> load_concepts_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read concepts file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("concepts file parse error: " + std::string(e.what()));
  }
  if (j.value("format", "") != "topiary-concepts" ||
      j.value("version", 0) != 1) {
    throw FormatError("unrecognized concepts file: " + path.string());
  }
  std::vector<Concept> out;
  for (const json& jc : j.at("concepts")) {
    Concept c;
    c.phrase = jc.at("phrase").get<std::string>();
    c.topics = jc.at("topics").get<std::set<int>>();
    c.corpus_count = jc.at("corpus_count").get<int>();
    c.doc_set = jc.at("doc_ids").get<std::set<int>>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace topiary
