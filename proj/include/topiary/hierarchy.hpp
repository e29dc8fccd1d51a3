#pragma once

#include <string>
#include <vector>

#include "topiary/extraction.hpp"

namespace topiary {

struct SubsumptionEdge {
  std::string parent;
  std::string child;
  double p_parent_given_child = 0.0;
  double p_child_given_parent = 0.0;

  bool operator==(const SubsumptionEdge&) const = default;
};

struct ConceptHierarchy {
  std::vector<std::string> nodes;        // sorted, unique
  std::vector<SubsumptionEdge> edges;    // sorted by (parent, child)

  std::vector<std::string> roots() const;  // nodes that are never a child
};

struct HierarchyParams {
  double upper_threshold = 1.0;  // tau; the strict subsumption rule at 1.0
  int min_doc_set = 1;           // drop concepts seen in fewer documents
  bool reduce = true;            // transitive reduction of the result
  bool tree = false;             // keep only the most specific parent
};

/// Empirical P(a|b) = |docs(a) and docs(b)| / |docs(b)|.
double conditional_prob(const Concept& a, const Concept& b);

/// Edge a -> b for every ordered pair with P(a|b) >= tau and P(b|a) < 1.
/// Throws CycleError when the relaxed threshold admits a cycle.
ConceptHierarchy learn_hierarchy(const std::vector<Concept>& concepts,
                                 const HierarchyParams& params);

/// Minimal edge set with the same reachability. Input must be acyclic.
ConceptHierarchy transitive_reduction(const ConceptHierarchy& h);

/// format is "json" or "dot".
std::string export_hierarchy(const ConceptHierarchy& h,
                             const std::string& format);

ConceptHierarchy import_hierarchy_json(const std::string& bytes);

}  // namespace topiary
