#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "topiary/extraction.hpp"

namespace topiary {

struct GoldSet {
  std::set<std::string> phrases;  // normalized: lowercase, single-spaced
};

struct EvalReport {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class MatchMode { Exact, TokenOverlap };

MatchMode match_mode_from_string(const std::string& name);

/// One phrase per line; '#' comments and blank lines skipped. Errors on
/// an unreadable or effectively empty file.
GoldSet load_gold(const std::filesystem::path& path);

/// Exact mode: set arithmetic on normalized phrases. Token-overlap mode:
/// phrases match when their token sets share >= 2 tokens or one contains
/// the other; gold phrases are consumed greedily by largest overlap.
EvalReport evaluate(const std::vector<Concept>& extracted, const GoldSet& gold,
                    MatchMode mode);

}  // namespace topiary
