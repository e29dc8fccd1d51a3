#include "topiary/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "topiary/error.hpp"

namespace topiary {

using nlohmann::json;

std::vector<std::string> ConceptHierarchy::roots() const {
  std::set<std::string> children;
  for (const SubsumptionEdge& e : edges) children.insert(e.child);
  std::vector<std::string> out;
  for (const std::string& n : nodes) {
    if (!children.count(n)) out.push_back(n);
  }
  return out;
}

double conditional_prob(const Concept& a, const Concept& b) {
  if (b.doc_set.empty()) {
    throw Error("conditional probability undefined: '" + b.phrase +
                "' has an empty document set");
  }
  std::size_t common = 0;
  for (int d : b.doc_set) common += a.doc_set.count(d);
  return static_cast<double>(common) / static_cast<double>(b.doc_set.size());
}

namespace {

struct AdjacencyView {
  std::vector<std::string> index_to_node;
  std::unordered_map<std::string, int> node_to_index;
  std::vector<std::vector<int>> successors;  // ascending
};

AdjacencyView adjacency(const ConceptHierarchy& h) {
  AdjacencyView v;
  v.index_to_node = h.nodes;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    v.node_to_index[h.nodes[i]] = static_cast<int>(i);
  }
  v.successors.resize(h.nodes.size());
  for (const SubsumptionEdge& e : h.edges) {
    v.successors[static_cast<std::size_t>(v.node_to_index.at(e.parent))]
        .push_back(v.node_to_index.at(e.child));
  }
  for (auto& s : v.successors) std::sort(s.begin(), s.end());
  return v;
}

// Iterative DFS cycle check; returns one concrete cycle path when found.
std::vector<std::string> find_cycle(const AdjacencyView& v) {
  const int n = static_cast<int>(v.index_to_node.size());
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new 1 open 2 done
  std::vector<int> path;

  for (int root = 0; root < n; ++root) {
    if (state[static_cast<std::size_t>(root)] != 0) continue;
    // frames of (node, next successor index)
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    state[static_cast<std::size_t>(root)] = 1;
    path.push_back(root);
    while (!frames.empty()) {
      auto& [u, next] = frames.back();
      const auto& succ = v.successors[static_cast<std::size_t>(u)];
      if (next >= succ.size()) {
        state[static_cast<std::size_t>(u)] = 2;
        path.pop_back();
        frames.pop_back();
        continue;
      }
      const int w = succ[next++];
      if (state[static_cast<std::size_t>(w)] == 1) {
        std::vector<std::string> cycle;
        auto it = std::find(path.begin(), path.end(), w);
        for (; it != path.end(); ++it) {
          cycle.push_back(v.index_to_node[static_cast<std::size_t>(*it)]);
        }
        cycle.push_back(v.index_to_node[static_cast<std::size_t>(w)]);
        return cycle;
      }
      if (state[static_cast<std::size_t>(w)] == 0) {
        state[static_cast<std::size_t>(w)] = 1;
        path.push_back(w);
        frames.emplace_back(w, 0);
      }
    }
  }
  return {};
}

// Topological order of an acyclic adjacency view (parents first).
std::vector<int> topo_order(const AdjacencyView& v) {
  const int n = static_cast<int>(v.index_to_node.size());
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (const auto& succ : v.successors) {
    for (int w : succ) ++indegree[static_cast<std::size_t>(w)];
  }
  std::vector<int> ready;
  for (int u = 0; u < n; ++u) {
    if (indegree[static_cast<std::size_t>(u)] == 0) ready.push_back(u);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (int w : v.successors[static_cast<std::size_t>(u)]) {
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
  }
  return order;
}

std::string cycle_message(const std::vector<std::string>& cycle) {
  std::ostringstream ss;
  ss << "subsumption cycle: ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) ss << " -> ";
    ss << cycle[i];
  }
  return ss.str();
}

void throw_on_cycle(const ConceptHierarchy& h) {
  std::vector<std::string> cycle = find_cycle(adjacency(h));
  if (!cycle.empty()) throw CycleError(cycle_message(cycle));
}

void sort_edges(std::vector<SubsumptionEdge>& edges) {
  std::sort(edges.begin(), edges.end(),
            [](const SubsumptionEdge& a, const SubsumptionEdge& b) {
              if (a.parent != b.parent) return a.parent < b.parent;
              return a.child < b.child;
            });
}

}  // namespace

ConceptHierarchy learn_hierarchy(const std::vector<Concept>& concepts,
                                 const HierarchyParams& params) {
  if (!(params.upper_threshold > 0.0) || params.upper_threshold > 1.0) {
    throw Error("upper_threshold must be in (0, 1]");
  }
  std::vector<const Concept*> kept;
  for (const Concept& c : concepts) {
    if (c.doc_set.empty()) {
      throw Error("concept has an empty document set: " + c.phrase);
    }
    if (static_cast<int>(c.doc_set.size()) >= params.min_doc_set) {
      kept.push_back(&c);
    }
  }

  ConceptHierarchy h;
  std::set<std::string> nodes;
  for (const Concept* c : kept) nodes.insert(c->phrase);
  h.nodes.assign(nodes.begin(), nodes.end());

  std::map<std::string, std::size_t> doc_set_size;
  for (const Concept* c : kept) doc_set_size[c->phrase] = c->doc_set.size();

  for (const Concept* a : kept) {
    for (const Concept* b : kept) {
      if (a == b || a->phrase == b->phrase) continue;
      const double p_ab = conditional_prob(*a, *b);
      if (p_ab < params.upper_threshold) continue;
      const double p_ba = conditional_prob(*b, *a);
      if (p_ba >= 1.0) continue;
      h.edges.push_back({a->phrase, b->phrase, p_ab, p_ba});
    }
  }
  sort_edges(h.edges);

  if (params.tree) {
    // Most specific parent only: smallest parent doc set, ties by phrase.
    std::map<std::string, SubsumptionEdge> best;
    for (const SubsumptionEdge& e : h.edges) {
      auto it = best.find(e.child);
      if (it == best.end()) {
        best.emplace(e.child, e);
        continue;
      }
      const std::size_t cur = doc_set_size.at(it->second.parent);
      const std::size_t alt = doc_set_size.at(e.parent);
      if (alt < cur || (alt == cur && e.parent < it->second.parent)) {
        it->second = e;
      }
    }
    h.edges.clear();
    for (const auto& [child, e] : best) h.edges.push_back(e);
    sort_edges(h.edges);
  }

  throw_on_cycle(h);
  if (params.reduce) return transitive_reduction(h);
  return h;
}

ConceptHierarchy transitive_reduction(const ConceptHierarchy& h) {
  throw_on_cycle(h);
  const AdjacencyView v = adjacency(h);
  const int n = static_cast<int>(v.index_to_node.size());

  // reach[u] = every node reachable from u; filled children-first.
  std::vector<std::set<int>> reach(static_cast<std::size_t>(n));
  std::vector<int> order = topo_order(v);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    for (int w : v.successors[static_cast<std::size_t>(u)]) {
      reach[static_cast<std::size_t>(u)].insert(w);
      const std::set<int>& sub = reach[static_cast<std::size_t>(w)];
      reach[static_cast<std::size_t>(u)].insert(sub.begin(), sub.end());
    }
  }

  ConceptHierarchy out;
  out.nodes = h.nodes;
  for (const SubsumptionEdge& e : h.edges) {
    const int u = v.node_to_index.at(e.parent);
    const int w = v.node_to_index.at(e.child);
    bool redundant = false;
    for (int other : v.successors[static_cast<std::size_t>(u)]) {
      if (other != w && reach[static_cast<std::size_t>(other)].count(w)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.edges.push_back(e);
  }
  return out;
}

std::string export_hierarchy(const ConceptHierarchy& h,
                             const std::string& format) {
  if (format == "json") {
    json edges = json::array();
    for (const SubsumptionEdge& e : h.edges) {
      edges.push_back({{"parent", e.parent},
                       {"child", e.child},
                       {"p_pc", e.p_parent_given_child},
                       {"p_cp", e.p_child_given_parent}});
    }
    json j = {{"nodes", h.nodes}, {"edges", edges}};
    return j.dump(2) + "\n";
  }
  if (format == "dot") {
    std::ostringstream ss;
    ss << "digraph concepts {\n";
    ss << "  rankdir=TB;\n";
    for (const std::string& n : h.nodes) {
      ss << "  \"" << n << "\";\n";
    }
    for (const SubsumptionEdge& e : h.edges) {
      ss << "  \"" << e.parent << "\" -> \"" << e.child << "\";\n";
    }
    ss << "}\n";
    return ss.str();
  }
  throw FormatError("unknown hierarchy format: " + format);
}

ConceptHierarchy import_hierarchy_json(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw FormatError("hierarchy parse error: " + std::string(e.what()));
  }
  ConceptHierarchy h;
  h.nodes = j.at("nodes").get<std::vector<std::string>>();
  for (const json& je : j.at("edges")) {
    SubsumptionEdge e;
    e.parent = je.at("parent").get<std::string>();
    e.child = je.at("child").get<std::string>();
    e.p_parent_given_child = je.at("p_pc").get<double>();
    e.p_child_given_parent = je.at("p_cp").get<double>();
    h.edges.push_back(std::move(e));
  }
  std::sort(h.nodes.begin(), h.nodes.end());
  sort_edges(h.edges);
  return h;
}

}  // namespace topiary
