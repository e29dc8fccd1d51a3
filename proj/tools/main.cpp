// topiary: extracts multi-word concepts from a text corpus with an LDA
// topic model and arranges them into a subsumption ("is-a") hierarchy.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "topiary/corpus.hpp"
#include "topiary/error.hpp"
#include "topiary/eval.hpp"
#include "topiary/extraction.hpp"
#include "topiary/hierarchy.hpp"
#include "topiary/lda.hpp"
#include "topiary/tagger.hpp"
#include "topiary/text.hpp"

#ifndef TOPIARY_DATA_DIR
#define TOPIARY_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string corpus_dir;
  std::string stopword_file = std::string(TOPIARY_DATA_DIR) + "/stopwords.txt";
  std::string lexicon_file = std::string(TOPIARY_DATA_DIR) + "/lexicon.tsv";
  std::string output_dir = "out";
  std::string gold_file;

  int topics = 50;
  double alpha = -1.0;  // < 0 means 50/topics
  double beta = 0.01;
  int iterations = 300;
  std::uint64_t seed = 42;
  bool stem = true;
  int min_token_len = 2;

  int cluster_size = 50;
  int top_terms = 10;
  int max_len = 3;
  bool log_itf = false;

  double threshold = 1.0;
  int min_doc_set = 1;
  bool no_reduce = false;
  bool tree = false;

  std::string mode = "exact";
  bool json_output = false;

  double resolved_alpha() const {
    return alpha > 0.0 ? alpha : 50.0 / topics;
  }
};

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw topiary::Error("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Digest over everything that influences output bytes. Paths are
// excluded; the data files enter through their content hashes.
std::string config_digest(const RunConfig& cfg) {
  std::ostringstream ss;
  ss << "alpha=" << fmt_double(cfg.resolved_alpha()) << '\n'
     << "beta=" << fmt_double(cfg.beta) << '\n'
     << "cluster_size=" << cfg.cluster_size << '\n'
     << "iterations=" << cfg.iterations << '\n'
     << "lexicon_hash=" << topiary::to_hex(topiary::fnv1a(
            read_file_bytes(cfg.lexicon_file))) << '\n'
     << "log_itf=" << cfg.log_itf << '\n'
     << "max_len=" << cfg.max_len << '\n'
     << "min_doc_set=" << cfg.min_doc_set << '\n'
     << "min_token_len=" << cfg.min_token_len << '\n'
     << "mode=" << cfg.mode << '\n'
     << "reduce=" << !cfg.no_reduce << '\n'
     << "seed=" << cfg.seed << '\n'
     << "stem=" << cfg.stem << '\n'
     << "stopword_hash=" << topiary::to_hex(topiary::fnv1a(
            read_file_bytes(cfg.stopword_file))) << '\n'
     << "threshold=" << fmt_double(cfg.threshold) << '\n'
     << "topics=" << cfg.topics << '\n'
     << "tree=" << cfg.tree << '\n';
  return topiary::to_hex(topiary::fnv1a(ss.str()));
}

topiary::PreprocessConfig preprocess_config(const RunConfig& cfg) {
  topiary::PreprocessConfig pp;
  pp.stopwords = topiary::load_stopwords(cfg.stopword_file);
  pp.stem = cfg.stem;
  pp.min_token_len = cfg.min_token_len;
  pp.lowercase = true;
  return pp;
}

topiary::Corpus ingest(const RunConfig& cfg) {
  if (cfg.corpus_dir.empty()) {
    throw topiary::Error("no corpus directory given (use --corpus)");
  }
  return topiary::ingest_directory(cfg.corpus_dir, preprocess_config(cfg));
}

topiary::LdaParams lda_params(const RunConfig& cfg) {
  topiary::LdaParams p;
  p.topics = cfg.topics;
  p.alpha = cfg.resolved_alpha();
  p.beta = cfg.beta;
  p.iterations = cfg.iterations;
  p.seed = cfg.seed;
  return p;
}

void write_text(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw topiary::Error("cannot write file: " + path.string());
  out << bytes;
}

void cmd_train(const RunConfig& cfg) {
  const std::string digest = config_digest(cfg);
  topiary::Corpus corpus = ingest(cfg);
  std::cout << "corpus: " << corpus.doc_count() << " documents, "
            << corpus.vocabulary.size() << " terms, "
            << corpus.total_tokens() << " tokens\n";

  topiary::TopicModel model = topiary::train(corpus, lda_params(cfg));
  const double ll = topiary::corpus_log_likelihood(model, corpus);
  std::cout << "trained " << cfg.topics << " topics, " << cfg.iterations
            << " sweeps, log likelihood " << ll << "\n";

  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  topiary::save_corpus(corpus, out / "corpus.json", digest);
  topiary::save_model(model, out / "model.json", digest);

  json manifest = {{"format", "topiary-manifest"},
                   {"version", 1},
                   {"config_digest", digest},
                   {"corpus_hash", topiary::to_hex(corpus.hash())},
                   {"seed", cfg.seed},
                   {"params",
                    {{"topics", cfg.topics},
                     {"alpha", cfg.resolved_alpha()},
                     {"beta", cfg.beta},
                     {"iterations", cfg.iterations},
                     {"stem", cfg.stem},
                     {"min_token_len", cfg.min_token_len}}}};
  write_text(out / "run_manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << (out / "model.json").string() << "\n";
}

void cmd_extract(const RunConfig& cfg) {
  const std::string digest = config_digest(cfg);
  const fs::path out(cfg.output_dir);
  topiary::TopicModel model = topiary::load_model(out / "model.json");
  topiary::Corpus corpus = ingest(cfg);
  if (corpus.hash() != model.corpus_hash) {
    throw topiary::HashMismatchError(
        "corpus does not match the trained model (hash mismatch); "
        "re-run train or restore the corpus and preprocessing flags");
  }

  topiary::LexiconTagger tagger =
      topiary::LexiconTagger::from_file(cfg.lexicon_file);
  topiary::ExtractionParams params;
  params.cluster_size = cfg.cluster_size;
  params.top_terms = cfg.top_terms;
  params.max_len = cfg.max_len;
  params.log_itf = cfg.log_itf;

  std::vector<topiary::Concept> concepts =
      topiary::extract_concepts(model, corpus, tagger, params);
  topiary::save_concepts_json(concepts, out / "concepts.json", digest);
  topiary::save_concepts_text(concepts, out / "concepts.txt", digest);
  std::cout << "extracted " << concepts.size() << " concepts\n";
  std::cout << "wrote " << (out / "concepts.json").string() << "\n";
}

void cmd_hierarchy(const RunConfig& cfg) {
  const std::string digest = config_digest(cfg);
  const fs::path out(cfg.output_dir);
  std::vector<topiary::Concept> concepts =
      topiary::load_concepts_json(out / "concepts.json");

  topiary::HierarchyParams params;
  params.upper_threshold = cfg.threshold;
  params.min_doc_set = cfg.min_doc_set;
  params.reduce = !cfg.no_reduce;
  params.tree = cfg.tree;
  topiary::ConceptHierarchy h = topiary::learn_hierarchy(concepts, params);

  json j = json::parse(topiary::export_hierarchy(h, "json"));
  j["format"] = "topiary-hierarchy";
  j["version"] = 1;
  j["config_digest"] = digest;
  write_text(out / "hierarchy.json", j.dump(2) + "\n");
  write_text(out / "hierarchy.dot",
             "// config_digest: " + digest + "\n" +
                 topiary::export_hierarchy(h, "dot"));

  const std::vector<std::string> roots = h.roots();
  std::cout << "hierarchy: " << h.nodes.size() << " concepts, "
            << h.edges.size() << " edges, " << roots.size() << " roots\n";
  for (std::size_t i = 0; i < roots.size() && i < 10; ++i) {
    std::cout << "  root: " << roots[i] << "\n";
  }
  std::cout << "wrote " << (out / "hierarchy.json").string() << " and "
            << (out / "hierarchy.dot").string() << "\n";
}

void cmd_eval(const RunConfig& cfg) {
  const fs::path out(cfg.output_dir);
  std::vector<topiary::Concept> concepts =
      topiary::load_concepts_json(out / "concepts.json");
  topiary::GoldSet gold = topiary::load_gold(cfg.gold_file);
  topiary::EvalReport r =
      topiary::evaluate(concepts, gold, topiary::match_mode_from_string(cfg.mode));

  if (cfg.json_output) {
    json j = {{"tp", r.tp},         {"fp", r.fp},
              {"fn", r.fn},         {"precision", r.precision},
              {"recall", r.recall}, {"f1", r.f1},
              {"mode", cfg.mode}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::printf("%12s %8d\n", "tp", r.tp);
  std::printf("%12s %8d\n", "fp", r.fp);
  std::printf("%12s %8d\n", "fn", r.fn);
  std::printf("%12s %8.4f\n", "precision", r.precision);
  std::printf("%12s %8.4f\n", "recall", r.recall);
  std::printf("%12s %8.4f\n", "f1", r.f1);
}

// Thrown for malformed config files; mapped to the usage exit code.
struct ConfigFileError {
  std::string message;
};

// Key/value config file: one "flag-name=value" per line, '#' comments.
// Keys use the long flag names without dashes. Values from the file are
// applied only where the command line did not set the flag, so flags win.
void apply_config_file(CLI::App* cmd, RunConfig& cfg,
                       const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError{"cannot read config file: " + path};

  auto provided = [&](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  auto parse_bool = [&](const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on" || value == "yes") {
      return true;
    }
    if (value == "false" || value == "0" || value == "off" || value == "no") {
      return false;
    }
    throw ConfigFileError{"config key '" + key + "' wants a boolean, got '" +
                          value + "'"};
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed = topiary::normalize_phrase(line);
    if (trimmed.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigFileError{"config line " + std::to_string(line_no) +
                            " is not key=value: " + line};
    }
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.erase(s.begin());
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
      }
      return s;
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));

    try {
      if (key == "corpus") {
        if (!provided("--corpus")) cfg.corpus_dir = value;
      } else if (key == "stopwords") {
        if (!provided("--stopwords")) cfg.stopword_file = value;
      } else if (key == "lexicon") {
        if (!provided("--lexicon")) cfg.lexicon_file = value;
      } else if (key == "output-dir") {
        if (!provided("--output-dir")) cfg.output_dir = value;
      } else if (key == "gold") {
        if (!provided("--gold")) cfg.gold_file = value;
      } else if (key == "topics") {
        if (!provided("--topics")) cfg.topics = std::stoi(value);
      } else if (key == "iterations") {
        if (!provided("--iterations")) cfg.iterations = std::stoi(value);
      } else if (key == "alpha") {
        if (!provided("--alpha")) cfg.alpha = std::stod(value);
      } else if (key == "beta") {
        if (!provided("--beta")) cfg.beta = std::stod(value);
      } else if (key == "seed") {
        if (!provided("--seed")) cfg.seed = std::stoull(value);
      } else if (key == "stem") {
        if (!provided("--stem")) cfg.stem = parse_bool(key, value);
      } else if (key == "min-token-len") {
        if (!provided("--min-token-len")) cfg.min_token_len = std::stoi(value);
      } else if (key == "cluster-size") {
        if (!provided("--cluster-size")) cfg.cluster_size = std::stoi(value);
      } else if (key == "top-terms") {
        if (!provided("--top-terms")) cfg.top_terms = std::stoi(value);
      } else if (key == "max-len") {
        if (!provided("--max-len")) cfg.max_len = std::stoi(value);
      } else if (key == "log-itf") {
        if (!provided("--log-itf")) cfg.log_itf = parse_bool(key, value);
      } else if (key == "threshold") {
        if (!provided("--threshold")) cfg.threshold = std::stod(value);
      } else if (key == "min-doc-set") {
        if (!provided("--min-doc-set")) cfg.min_doc_set = std::stoi(value);
      } else if (key == "no-reduce") {
        if (!provided("--no-reduce")) cfg.no_reduce = parse_bool(key, value);
      } else if (key == "tree") {
        if (!provided("--tree")) cfg.tree = parse_bool(key, value);
      } else if (key == "mode") {
        if (!provided("--mode")) cfg.mode = value;
      } else if (key == "json") {
        if (!provided("--json")) cfg.json_output = parse_bool(key, value);
      } else {
        throw ConfigFileError{"unknown config key: " + key};
      }
    } catch (const std::invalid_argument&) {
      throw ConfigFileError{"config key '" + key + "' has a bad value: '" +
                            value + "'"};
    } catch (const std::out_of_range&) {
      throw ConfigFileError{"config key '" + key + "' has a bad value: '" +
                            value + "'"};
    }
  }
}

void add_common_options(CLI::App* cmd, RunConfig& cfg,
                        std::string& config_path) {
  cmd->add_option("--config", config_path,
                  "Key/value config file; flags win");
  cmd->add_option("--corpus", cfg.corpus_dir,
                  "Directory of .txt files, optionally category/doc.txt");
  cmd->add_option("--stopwords", cfg.stopword_file, "Stopword list file")
      ->capture_default_str();
  cmd->add_option("--lexicon", cfg.lexicon_file, "POS lexicon file")
      ->capture_default_str();
  cmd->add_option("--output-dir", cfg.output_dir, "Artifact directory")
      ->capture_default_str();
  cmd->add_option("--topics", cfg.topics, "Number of topics")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--iterations", cfg.iterations, "Gibbs sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha,
                  "Document-topic prior (default 50/topics)");
  cmd->add_option("--beta", cfg.beta, "Topic-word prior")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  cmd->add_flag("--stem,!--no-stem", cfg.stem,
                "Porter-stem the model token stream (default on)");
  cmd->add_option("--min-token-len", cfg.min_token_len,
                  "Shortest token kept")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cluster-size", cfg.cluster_size,
                  "Documents per topic cluster (K)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--top-terms", cfg.top_terms,
                  "tf-itf ranked terms per topic (n)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-len", cfg.max_len, "Longest concept, 2 or 3 words")
      ->check(CLI::Range(2, 3))
      ->capture_default_str();
  cmd->add_flag("--log-itf", cfg.log_itf,
                "Use log(total/docs) for inverse topic frequency");
  cmd->add_option("--threshold", cfg.threshold,
                  "Subsumption threshold tau in (0,1]")
      ->capture_default_str();
  cmd->add_option("--min-doc-set", cfg.min_doc_set,
                  "Drop concepts in fewer documents")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--no-reduce", cfg.no_reduce,
                "Keep transitively implied edges");
  cmd->add_flag("--tree", cfg.tree, "Keep only the most specific parent");
  cmd->add_option("--gold", cfg.gold_file, "Gold concept list for eval");
  cmd->add_option("--mode", cfg.mode, "Eval match mode: exact|token-overlap")
      ->check(CLI::IsMember({"exact", "token-overlap"}))
      ->capture_default_str();
  cmd->add_flag("--json", cfg.json_output, "Emit the eval report as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topic-guided concept extraction and hierarchy learning"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  CLI::App* train = app.add_subcommand("train", "Ingest a corpus and train the topic model");
  CLI::App* extract = app.add_subcommand("extract", "Extract concepts from a trained model");
  CLI::App* hierarchy = app.add_subcommand("hierarchy", "Learn the subsumption hierarchy");
  CLI::App* eval = app.add_subcommand("eval", "Score concepts against a gold list");
  CLI::App* run_all = app.add_subcommand("run-all", "train, extract, hierarchy and eval in one go");
  for (CLI::App* cmd : {train, extract, hierarchy, eval, run_all}) {
    add_common_options(cmd, cfg, config_path);
  }

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      for (CLI::App* cmd : {train, extract, hierarchy, eval, run_all}) {
        if (cmd->parsed()) apply_config_file(cmd, cfg, config_path);
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigFileError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  }

  try {
    if (train->parsed()) {
      cmd_train(cfg);
    } else if (extract->parsed()) {
      cmd_extract(cfg);
    } else if (hierarchy->parsed()) {
      cmd_hierarchy(cfg);
    } else if (eval->parsed()) {
      cmd_eval(cfg);
    } else if (run_all->parsed()) {
      cmd_train(cfg);
      cmd_extract(cfg);
      cmd_hierarchy(cfg);
      if (!cfg.gold_file.empty()) cmd_eval(cfg);
    }
  } catch (const topiary::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
