#include "couplings/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "couplings/errors.hpp"

namespace couplings {

namespace {

// Union-find over a contiguous index range.
struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  // Returns false when u and v were already connected.
  bool unite(int u, int v) {
    u = find(u);
    v = find(v);
    if (u == v) return false;
    parent[u] = v;
    return true;
  }
};

bool edges_are_acyclic(int num_a, int num_b,
                       const std::vector<std::pair<int, int>>& edges) {
  DisjointSet ds(num_a + num_b);
  for (const auto& [a, b] : edges) {
    if (!ds.unite(a, num_a + b)) return false;
  }
  return true;
}

}  // namespace

Rational WeightedBipartiteGraph::weight_a_total() const {
  Rational sum = 0;
  for (const auto& w : a_weights) sum += w;
  return sum;
}

Rational WeightedBipartiteGraph::weight_b_total() const {
  Rational sum = 0;
  for (const auto& w : b_weights) sum += w;
  return sum;
}

bool WeightedBipartiteGraph::has_edge(int a, int b) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::string WeightedBipartiteGraph::plain_a(int a) const {
  const std::string& label = a_labels[a];
  return label.rfind("A:", 0) == 0 ? label.substr(2) : label;
}

std::string WeightedBipartiteGraph::plain_b(int b) const {
  const std::string& label = b_labels[b];
  return label.rfind("B:", 0) == 0 ? label.substr(2) : label;
}

WeightedBipartiteGraph make_graph(std::vector<std::string> a_labels,
                                  std::vector<std::string> b_labels,
                                  std::vector<Rational> a_weights,
                                  std::vector<Rational> b_weights,
                                  std::vector<std::pair<int, int>> edges) {
  WeightedBipartiteGraph graph;
  graph.a_labels = std::move(a_labels);
  graph.b_labels = std::move(b_labels);
  graph.a_weights = std::move(a_weights);
  graph.b_weights = std::move(b_weights);

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  graph.edges = std::move(edges);

  graph.a_adj.assign(graph.a_labels.size(), {});
  graph.b_adj.assign(graph.b_labels.size(), {});
  for (const auto& [a, b] : graph.edges) {
    graph.a_adj[a].push_back(b);
    graph.b_adj[b].push_back(a);
  }
  return graph;
}

WeightedBipartiteGraph to_graph(const Instance& instance) {
  std::vector<std::string> a_labels, b_labels;
  std::vector<Rational> a_weights, b_weights;
  std::unordered_map<std::string, int> a_index, b_index;
  for (const auto& label : instance.a_labels) {
    a_index[label] = static_cast<int>(a_labels.size());
    a_labels.push_back("A:" + label);
    a_weights.push_back(instance.mass_a(label));
  }
  for (const auto& label : instance.b_labels) {
    b_index[label] = static_cast<int>(b_labels.size());
    b_labels.push_back("B:" + label);
    b_weights.push_back(instance.mass_b(label));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(instance.relation.size());
  for (const auto& [a, b] : instance.relation) {
    edges.emplace_back(a_index.at(a), b_index.at(b));
  }
  return make_graph(std::move(a_labels), std::move(b_labels),
                    std::move(a_weights), std::move(b_weights),
                    std::move(edges));
}

WeightedBipartiteGraph unit_graph(const Instance& instance) {
  WeightedBipartiteGraph graph = to_graph(instance);
  std::fill(graph.a_weights.begin(), graph.a_weights.end(), Rational(1));
  std::fill(graph.b_weights.begin(), graph.b_weights.end(), Rational(1));
  return graph;
}

WeightedBipartiteGraph swap_sides(const WeightedBipartiteGraph& graph) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [a, b] : graph.edges) edges.emplace_back(b, a);
  return make_graph(graph.b_labels, graph.a_labels, graph.b_weights,
                    graph.a_weights, std::move(edges));
}

std::set<int> neighborhood(const WeightedBipartiteGraph& graph,
                           const std::set<int>& subset) {
  std::set<int> result;
  for (int a : subset) {
    result.insert(graph.a_adj[a].begin(), graph.a_adj[a].end());
  }
  return result;
}

Rational Coupling::total() const {
  Rational sum = 0;
  for (const auto& [pair, m] : mass) sum += m;
  return sum;
}

Rational Coupling::mass_on(
    const std::set<std::pair<std::string, std::string>>& relation) const {
  Rational sum = 0;
  for (const auto& [pair, m] : mass) {
    if (relation.count(pair)) sum += m;
  }
  return sum;
}

bool coupling_is_valid(const Coupling& coupling, const Instance& instance,
                       bool require_support) {
  std::map<std::string, Rational> row, col;
  for (const auto& [pair, m] : coupling.mass) {
    if (m <= 0) return false;
    if (require_support && !instance.relation.count(pair)) return false;
    row[pair.first] += m;
    col[pair.second] += m;
  }
  for (const auto& label : instance.a_labels) {
    Rational sum = row.count(label) ? row[label] : Rational(0);
    if (sum != instance.mass_a(label)) return false;
    row.erase(label);
  }
  for (const auto& label : instance.b_labels) {
    Rational sum = col.count(label) ? col[label] : Rational(0);
    if (sum != instance.mass_b(label)) return false;
    col.erase(label);
  }
  // Entries on labels outside the instance would survive the loops above.
  return row.empty() && col.empty();
}

bool coupling_support_is_forest(const Coupling& coupling) {
  std::unordered_map<std::string, int> index;
  auto id = [&index](const std::string& key) {
    auto [it, inserted] = index.emplace(key, static_cast<int>(index.size()));
    return it->second;
  };
  DisjointSet ds(2 * static_cast<int>(coupling.mass.size()));
  for (const auto& [pair, m] : coupling.mass) {
    if (!ds.unite(id("A:" + pair.first), id("B:" + pair.second))) return false;
  }
  return true;
}

bool certificate_is_valid(const Certificate& certificate,
                          const Instance& instance) {
  std::set<std::string> u(certificate.violating_set.begin(),
                          certificate.violating_set.end());
  Rational lhs = 0;
  for (const auto& label : u) lhs += instance.mass_a(label);
  std::set<std::string> nbrs;
  for (const auto& [a, b] : instance.relation) {
    if (u.count(a)) nbrs.insert(b);
  }
  Rational rhs = 0;
  for (const auto& label : nbrs) rhs += instance.mass_b(label);
  return lhs == certificate.lhs && rhs == certificate.rhs &&
         certificate.deficiency == lhs - rhs && certificate.deficiency > 0;
}

bool matching_is_valid(const Matching& matching,
                       const WeightedBipartiteGraph& graph) {
  std::set<int> used_a, used_b;
  for (const auto& [a, b] : matching.edges) {
    if (!graph.has_edge(a, b)) return false;
    if (!used_a.insert(a).second) return false;
    if (!used_b.insert(b).second) return false;
  }
  return true;
}

bool forest_is_valid(const Forest& forest) {
  for (const auto& edge : forest.edges) {
    if (!forest.graph.has_edge(edge.first, edge.second)) return false;
  }
  if (forest.edge_count() >
      forest.graph.num_a() + forest.graph.num_b() - 1) {
    return false;
  }
  return edges_are_acyclic(forest.graph.num_a(), forest.graph.num_b(),
                           forest.edges);
}

}  // namespace couplings
