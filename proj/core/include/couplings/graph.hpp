#ifndef COUPLINGS_GRAPH_HPP
#define COUPLINGS_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "couplings/instance.hpp"
#include "couplings/rational.hpp"

namespace couplings {

// Vertex-weighted bipartite graph. Vertex labels are namespaced "A:x" /
// "B:y" so the two sides are disjoint even when the instance reuses a
// label on both sides. Edges are stored as (a index, b index) pairs,
// sorted and unique; adjacency lists are sorted.
struct WeightedBipartiteGraph {
  std::vector<std::string> a_labels;  // namespaced
  std::vector<std::string> b_labels;
  std::vector<Rational> a_weights;
  std::vector<Rational> b_weights;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> a_adj;
  std::vector<std::vector<int>> b_adj;

  int num_a() const { return static_cast<int>(a_labels.size()); }
  int num_b() const { return static_cast<int>(b_labels.size()); }

  Rational weight_a_total() const;
  Rational weight_b_total() const;

  bool has_edge(int a, int b) const;

  /// Label with the "A:" / "B:" prefix stripped.
  std::string plain_a(int a) const;
  std::string plain_b(int b) const;
};

/// Builds a graph with the given (already namespaced or otherwise unique)
/// labels, weights and edge list. Deduplicates and sorts edges.
WeightedBipartiteGraph make_graph(std::vector<std::string> a_labels,
                                  std::vector<std::string> b_labels,
                                  std::vector<Rational> a_weights,
                                  std::vector<Rational> b_weights,
                                  std::vector<std::pair<int, int>> edges);

/// Translation from the probabilistic to the graph formulation: vertices
/// are the disjoint union of A and B, edges are the relation pairs,
/// weights are the measures.
WeightedBipartiteGraph to_graph(const Instance& instance);

/// Same vertex set and edges, all weights 1. Used by the matching
/// operations, where only adjacency matters.
WeightedBipartiteGraph unit_graph(const Instance& instance);

/// Graph with the two sides exchanged.
WeightedBipartiteGraph swap_sides(const WeightedBipartiteGraph& graph);

/// N(U): all B-vertices adjacent to at least one vertex of `subset`.
std::set<int> neighborhood(const WeightedBipartiteGraph& graph,
                           const std::set<int>& subset);

// Edge-mass function with prescribed marginals; only positive entries are
// stored, keyed by plain instance labels.
struct Coupling {
  std::map<std::pair<std::string, std::string>, Rational> mass;

  Rational total() const;
  /// Mass on the given relation.
  Rational mass_on(
      const std::set<std::pair<std::string, std::string>>& relation) const;
  int support_size() const { return static_cast<int>(mass.size()); }
};

/// Checks support, nonnegativity and both marginal identities exactly.
/// `require_support` restricts the support to the instance relation.
bool coupling_is_valid(const Coupling& coupling, const Instance& instance,
                       bool require_support = true);

/// True when the coupling's support, read as a bipartite graph on the
/// instance's labels, contains no cycle.
bool coupling_support_is_forest(const Coupling& coupling);

// Violating subset U of A witnessing infeasibility: P(U) > P'(N_R(U)).
struct Certificate {
  std::vector<std::string> violating_set;  // plain A labels, instance order
  Rational lhs;         // P(U)
  Rational rhs;         // P'(N_R(U))
  Rational deficiency;  // lhs - rhs, always > 0
};

/// Recomputes lhs/rhs/deficiency of the certificate from the instance and
/// checks they match; deficiency must be positive.
bool certificate_is_valid(const Certificate& certificate,
                          const Instance& instance);

// Edge subset with pairwise-disjoint endpoints, as (a, b) index pairs of
// its host graph.
struct Matching {
  std::vector<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(edges.size()); }
};

bool matching_is_valid(const Matching& matching,
                       const WeightedBipartiteGraph& graph);

// Spanning subgraph of `graph` restricted to `edges`; acyclic.
struct Forest {
  WeightedBipartiteGraph graph;  // host, carries the weights
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Acyclicity plus edge count at most |A|+|B|-1, every edge in the host.
bool forest_is_valid(const Forest& forest);

}  // namespace couplings

#endif
