#include "topiary/eval.hpp"

#include <algorithm>
#include <fstream>

#include "topiary/error.hpp"
#include "topiary/text.hpp"

namespace topiary {

MatchMode match_mode_from_string(const std::string& name) {
  if (name == "exact") return MatchMode::Exact;
  if (name == "token-overlap") return MatchMode::TokenOverlap;
  throw EvalError("unknown match mode: " + name);
}

GoldSet load_gold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("cannot read gold file: " + path.string());
  GoldSet gold;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string phrase = normalize_phrase(line);
    if (!phrase.empty()) gold.phrases.insert(phrase);
  }
  if (gold.phrases.empty()) {
    throw EvalError("gold file has no phrases: " + path.string());
  }
  return gold;
}

namespace {

EvalReport finalize(int tp, int fp, int fn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  r.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

std::set<std::string> token_set(const std::string& phrase) {
  std::set<std::string> out;
  for (const std::string& t : surface_tokens(phrase)) out.insert(t);
  return out;
}

std::size_t overlap_size(const std::set<std::string>& a,
                         const std::set<std::string>& b) {
  std::size_t n = 0;
  for (const std::string& t : a) n += b.count(t);
  return n;
}

bool contains_all(const std::set<std::string>& outer,
                  const std::set<std::string>& inner) {
  return std::all_of(inner.begin(), inner.end(), [&](const std::string& t) {
    return outer.count(t) > 0;
  });
}

}  // namespace

EvalReport evaluate(const std::vector<Concept>& extracted, const GoldSet& gold,
                    MatchMode mode) {
  if (gold.phrases.empty()) throw EvalError("gold set is empty");

  std::set<std::string> phrases;
  for (const Concept& c : extracted) {
    phrases.insert(normalize_phrase(c.phrase));
  }

  if (mode == MatchMode::Exact) {
    int tp = 0;
    for (const std::string& p : phrases) tp += gold.phrases.count(p);
    const int fp = static_cast<int>(phrases.size()) - tp;
    const int fn = static_cast<int>(gold.phrases.size()) - tp;
    return finalize(tp, fp, fn);
  }

  // Token overlap: rank all candidate pairs by overlap size, then
  // lexicographically, and consume each side at most once.
  struct Pair {
    std::size_t overlap;
    std::string extracted;
    std::string gold;
  };
  std::vector<Pair> pairs;
  for (const std::string& e : phrases) {
    const std::set<std::string> et = token_set(e);
    for (const std::string& g : gold.phrases) {
      const std::set<std::string> gt = token_set(g);
      const std::size_t shared = overlap_size(et, gt);
      const bool contained = contains_all(et, gt) || contains_all(gt, et);
      if (shared >= 2 || contained) {
        pairs.push_back({std::max<std::size_t>(shared, 1), e, g});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.extracted != b.extracted) return a.extracted < b.extracted;
    return a.gold < b.gold;
  });
  std::set<std::string> used_extracted;
  std::set<std::string> used_gold;
  int tp = 0;
  for (const Pair& p : pairs) {
    if (used_extracted.count(p.extracted) || used_gold.count(p.gold)) continue;
    used_extracted.insert(p.extracted);
    used_gold.insert(p.gold);
    ++tp;
  }
  const int fp = static_cast<int>(phrases.size()) - tp;
  const int fn = static_cast<int>(gold.phrases.size()) - tp;
  return finalize(tp, fp, fn);
}

}  // namespace topiary
