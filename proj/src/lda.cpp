#include "topiary/lda.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "topiary/error.hpp"
#include "topiary/text.hpp"

namespace topiary {

using nlohmann::json;

namespace {

void validate(const LdaParams& p) {
  if (p.topics < 1) throw TrainError("topics must be >= 1");
  if (!(p.alpha > 0.0)) throw TrainError("alpha must be > 0");
  if (!(p.beta > 0.0)) throw TrainError("beta must be > 0");
  if (p.iterations < 1) throw TrainError("iterations must be >= 1");
}

// 53-bit mantissa mapping; pinned so seeded runs agree across platforms.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

TopicModel train(const Corpus& corpus, const LdaParams& params) {
  return train(corpus, params, SweepObserver());
}

TopicModel train(const Corpus& corpus, const LdaParams& params,
                 const SweepObserver& on_sweep) {
  validate(params);
  if (corpus.documents.empty()) throw TrainError("empty corpus");
  for (const Document& d : corpus.documents) {
    if (d.tokens.empty()) {
      throw TrainError("document has no tokens: " + d.name);
    }
  }

  const int T = params.topics;
  const int V = corpus.vocabulary.size();
  const int M = corpus.doc_count();
  const double vbeta = static_cast<double>(V) * params.beta;

  TopicModel model;
  model.params = params;
  model.doc_count = M;
  model.vocab_size = V;
  model.corpus_hash = corpus.hash();
  model.assignments.resize(static_cast<std::size_t>(M));
  model.doc_topic.assign(static_cast<std::size_t>(M),
                         std::vector<int>(static_cast<std::size_t>(T), 0));
  model.topic_word.assign(static_cast<std::size_t>(T),
                          std::vector<int>(static_cast<std::size_t>(V), 0));
  model.topic_total.assign(static_cast<std::size_t>(T), 0);

  std::mt19937_64 rng(params.seed);

  for (int d = 0; d < M; ++d) {
    const auto& tokens = corpus.documents[static_cast<std::size_t>(d)].tokens;
    auto& z = model.assignments[static_cast<std::size_t>(d)];
    z.resize(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      int t = static_cast<int>(rng() % static_cast<std::uint64_t>(T));
      z[i] = t;
      ++model.doc_topic[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
      ++model.topic_word[static_cast<std::size_t>(t)]
                        [static_cast<std::size_t>(tokens[i])];
      ++model.topic_total[static_cast<std::size_t>(t)];
    }
  }

  std::vector<double> cumulative(static_cast<std::size_t>(T));
  for (int sweep = 0; sweep < params.iterations; ++sweep) {
    for (int d = 0; d < M; ++d) {
      const auto& tokens =
          corpus.documents[static_cast<std::size_t>(d)].tokens;
      auto& z = model.assignments[static_cast<std::size_t>(d)];
      auto& n_dt = model.doc_topic[static_cast<std::size_t>(d)];
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const int w = tokens[i];
        const int old_t = z[i];
        --n_dt[static_cast<std::size_t>(old_t)];
        --model.topic_word[static_cast<std::size_t>(old_t)]
                          [static_cast<std::size_t>(w)];
        --model.topic_total[static_cast<std::size_t>(old_t)];

        double total = 0.0;
        for (int t = 0; t < T; ++t) {
          const auto ts = static_cast<std::size_t>(t);
          total += (n_dt[ts] + params.alpha) *
                   (model.topic_word[ts][static_cast<std::size_t>(w)] +
                    params.beta) /
                   (static_cast<double>(model.topic_total[ts]) + vbeta);
          cumulative[ts] = total;
        }
        const double r = uniform01(rng) * total;
        int new_t = T - 1;
        for (int t = 0; t < T; ++t) {
          if (r < cumulative[static_cast<std::size_t>(t)]) {
            new_t = t;
            break;
          }
        }
        z[i] = new_t;
        ++n_dt[static_cast<std::size_t>(new_t)];
        ++model.topic_word[static_cast<std::size_t>(new_t)]
                          [static_cast<std::size_t>(w)];
        ++model.topic_total[static_cast<std::size_t>(new_t)];
      }
    }
    if (on_sweep) on_sweep(sweep + 1, model);
  }
  return model;
}

std::vector<std::vector<double>> phi(const TopicModel& model) {
  const double vbeta =
      static_cast<double>(model.vocab_size) * model.params.beta;
  std::vector<std::vector<double>> out(
      static_cast<std::size_t>(model.params.topics),
      std::vector<double>(static_cast<std::size_t>(model.vocab_size)));
  for (int t = 0; t < model.params.topics; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    const double denom = static_cast<double>(model.topic_total[ts]) + vbeta;
    for (int w = 0; w < model.vocab_size; ++w) {
      out[ts][static_cast<std::size_t>(w)] =
          (model.topic_word[ts][static_cast<std::size_t>(w)] +
           model.params.beta) /
          denom;
    }
  }
  return out;
}

std::vector<std::vector<double>> theta(const TopicModel& model) {
  const int T = model.params.topics;
  std::vector<std::vector<double>> out(
      static_cast<std::size_t>(model.doc_count),
      std::vector<double>(static_cast<std::size_t>(T)));
  for (int d = 0; d < model.doc_count; ++d) {
    const auto ds = static_cast<std::size_t>(d);
    long long len = 0;
    for (int c : model.doc_topic[ds]) len += c;
    const double denom =
        static_cast<double>(len) + static_cast<double>(T) * model.params.alpha;
    for (int t = 0; t < T; ++t) {
      out[ds][static_cast<std::size_t>(t)] =
          (model.doc_topic[ds][static_cast<std::size_t>(t)] +
           model.params.alpha) /
          denom;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      int topic, int n) {
  if (topic < 0 || topic >= model.params.topics) {
    throw Error("topic id out of range: " + std::to_string(topic));
  }
  if (n < 1) throw Error("top_words needs n >= 1");
  if (vocab.size() != model.vocab_size) {
    throw Error("vocabulary does not match the model");
  }
  std::vector<std::vector<double>> p = phi(model);
  const auto& row = p[static_cast<std::size_t>(topic)];
  std::vector<int> ids(static_cast<std::size_t>(model.vocab_size));
  for (int w = 0; w < model.vocab_size; ++w) ids[static_cast<std::size_t>(w)] = w;
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    double pa = row[static_cast<std::size_t>(a)];
    double pb = row[static_cast<std::size_t>(b)];
    if (pa != pb) return pa > pb;
    return a < b;
  });
  const int count = std::min(n, model.vocab_size);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int w = ids[static_cast<std::size_t>(i)];
    out.emplace_back(vocab.term_of(w), row[static_cast<std::size_t>(w)]);
  }
  return out;
}

double corpus_log_likelihood(const TopicModel& model, const Corpus& corpus) {
  if (corpus.vocabulary.size() != model.vocab_size ||
      corpus.doc_count() != model.doc_count ||
      corpus.hash() != model.corpus_hash) {
    throw Error("corpus does not match the model");
  }
  const std::vector<std::vector<double>> th = theta(model);
  const std::vector<std::vector<double>> ph = phi(model);
  const int T = model.params.topics;
  double sum = 0.0;
  for (const Document& d : corpus.documents) {
    const auto ds = static_cast<std::size_t>(d.id);
    for (int w : d.tokens) {
      double p = 0.0;
      for (int t = 0; t < T; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        p += th[ds][ts] * ph[ts][static_cast<std::size_t>(w)];
      }
      sum += std::log(p);
    }
  }
  return sum;
}

void save_model(const TopicModel& model, const std::filesystem::path& path,
                const std::string& config_digest) {
  json j = {{"format", "topiary-model"},
            {"version", 1},
            {"params",
             {{"topics", model.params.topics},
              {"alpha", model.params.alpha},
              {"beta", model.params.beta},
              {"iterations", model.params.iterations},
              {"seed", model.params.seed}}},
            {"doc_count", model.doc_count},
            {"vocab_size", model.vocab_size},
            {"corpus_hash", to_hex(model.corpus_hash)},
            {"assignments", model.assignments},
            {"doc_topic", model.doc_topic},
            {"topic_word", model.topic_word},
            {"topic_total", model.topic_total}};
  if (!config_digest.empty()) j["config_digest"] = config_digest;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file: " + path.string());
  out << j.dump() << '\n';
}

namespace {

// Counts must be reproducible from the assignments; reject files where
// they disagree.
void check_counts(const TopicModel& m) {
  std::vector<std::vector<int>> dt(
      static_cast<std::size_t>(m.doc_count),
      std::vector<int>(static_cast<std::size_t>(m.params.topics), 0));
  std::vector<long long> tot(static_cast<std::size_t>(m.params.topics), 0);
  for (int d = 0; d < m.doc_count; ++d) {
    for (int t : m.assignments[static_cast<std::size_t>(d)]) {
      if (t < 0 || t >= m.params.topics) {
        throw FormatError("assignment topic out of range");
      }
      ++dt[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
      ++tot[static_cast<std::size_t>(t)];
    }
  }
  if (dt != m.doc_topic || tot != m.topic_total) {
    throw FormatError("model counts disagree with assignments");
  }
  for (int t = 0; t < m.params.topics; ++t) {
    long long row = 0;
    for (int c : m.topic_word[static_cast<std::size_t>(t)]) row += c;
    if (row != m.topic_total[static_cast<std::size_t>(t)]) {
      throw FormatError("topic_word row sum disagrees with topic_total");
    }
  }
}

}  // namespace

TopicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("model file parse error: " + std::string(e.what()));
  }
  if (j.value("format", "") != "topiary-model" || j.value("version", 0) != 1) {
    throw FormatError("unrecognized model file: " + path.string());
  }
  TopicModel m;
  const json& p = j.at("params");
  m.params.topics = p.at("topics").get<int>();
  m.params.alpha = p.at("alpha").get<double>();
  m.params.beta = p.at("beta").get<double>();
  m.params.iterations = p.at("iterations").get<int>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.doc_count = j.at("doc_count").get<int>();
  m.vocab_size = j.at("vocab_size").get<int>();
  m.corpus_hash = std::stoull(j.at("corpus_hash").get<std::string>(), nullptr, 16);
  m.assignments = j.at("assignments").get<std::vector<std::vector<int>>>();
  m.doc_topic = j.at("doc_topic").get<std::vector<std::vector<int>>>();
  m.topic_word = j.at("topic_word").get<std::vector<std::vector<int>>>();
  m.topic_total = j.at("topic_total").get<std::vector<long long>>();
  check_counts(m);
  return m;
}

}  // namespace topiary
