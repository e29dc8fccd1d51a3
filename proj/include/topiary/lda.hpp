#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "topiary/corpus.hpp"

namespace topiary {

struct LdaParams {
  int topics = 50;
  double alpha = 1.0;  // 50/topics for the defaults
  double beta = 0.01;
  int iterations = 300;
  std::uint64_t seed = 42;
};

/// Gibbs-sampler state after training. Counts are redundant with the
/// assignments and must stay consistent with a full recount.
struct TopicModel {
  LdaParams params;
  int doc_count = 0;
  int vocab_size = 0;
  std::vector<std::vector<int>> assignments;  // per doc, per token position
  std::vector<std::vector<int>> doc_topic;    // M x T
  std::vector<std::vector<int>> topic_word;   // T x V
  std::vector<long long> topic_total;         // T
  std::uint64_t corpus_hash = 0;
};

/// Called after each completed sweep (1-based) with the current state.
using SweepObserver = std::function<void(int sweep, const TopicModel& model)>;

/// Collapsed Gibbs sampling with the conditional
///   p(z=t | rest) ~ (n_dt + alpha) * (n_tw + beta) / (n_t + V*beta),
/// counts excluding the token being resampled. Deterministic for a fixed
/// seed: the RNG is std::mt19937_64 with a 53-bit uniform double mapping.
TopicModel train(const Corpus& corpus, const LdaParams& params);
TopicModel train(const Corpus& corpus, const LdaParams& params,
                 const SweepObserver& on_sweep);

/// phi[t][w] = (n_tw + beta) / (n_t + V*beta)
std::vector<std::vector<double>> phi(const TopicModel& model);

/// theta[d][t] = (n_dt + alpha) / (len_d + T*alpha)
std::vector<std::vector<double>> theta(const TopicModel& model);

/// Top-n terms of a topic by phi, ties broken by ascending term id.
std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      int topic, int n);

/// Sum over tokens of log sum_t theta[d][t] * phi[t][w]; a training
/// diagnostic, always <= 0.
double corpus_log_likelihood(const TopicModel& model, const Corpus& corpus);

void save_model(const TopicModel& model, const std::filesystem::path& path,
                const std::string& config_digest = "");
TopicModel load_model(const std::filesystem::path& path);

}  // namespace topiary
