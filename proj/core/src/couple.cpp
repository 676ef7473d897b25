#include "couplings/couple.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/flow.hpp"

namespace couplings {

namespace {

using Edge = std::pair<int, int>;
using Support = std::map<Edge, Rational>;

// ---------------------------------------------------------------------------
// Cycle canceling

// Finds a cycle among the support edges, as a closed vertex walk
// v0, v1, ..., v_{2m-1}, v0 (A-vertices encoded as-is, B-vertices offset by
// num_a). Returns an empty vector when the support is acyclic.
// Deterministic: depth-first from the smallest support vertex, neighbors in
// ascending order.
std::vector<int> find_cycle(int num_a, int num_b, const Support& support) {
  const int n = num_a + num_b;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [edge, mass] : support) {
    adj[edge.first].push_back(num_a + edge.second);
    adj[num_a + edge.second].push_back(edge.first);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<int> parent(n, -1);
  std::vector<int> state(n, 0);  // 0 unvisited, 1 visited
  for (int start = 0; start < n; ++start) {
    if (state[start] || adj[start].empty()) continue;
    // Iterative DFS; in an undirected graph any visited non-parent
    // neighbor is an ancestor, which closes a cycle.
    std::vector<std::pair<int, size_t>> stack{{start, 0}};
    state[start] = 1;
    parent[start] = start;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      int u = adj[v][next++];
      if (u == parent[v]) continue;
      if (state[u]) {
        std::vector<int> cycle;
        for (int w = v; w != u; w = parent[w]) cycle.push_back(w);
        cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      state[u] = 1;
      parent[u] = v;
      stack.emplace_back(u, 0);
    }
  }
  return {};
}

Edge walk_edge(int num_a, int u, int v) {
  if (u < num_a) return {u, v - num_a};
  return {v, u - num_a};
}

Support support_from_coupling(const WeightedBipartiteGraph& graph,
                              const Coupling& coupling) {
  std::map<std::string, int> a_index, b_index;
  for (int a = 0; a < graph.num_a(); ++a) a_index[graph.plain_a(a)] = a;
  for (int b = 0; b < graph.num_b(); ++b) b_index[graph.plain_b(b)] = b;

  Support support;
  for (const auto& [pair, mass] : coupling.mass) {
    auto a_it = a_index.find(pair.first);
    auto b_it = b_index.find(pair.second);
    if (a_it == a_index.end() || b_it == b_index.end() ||
        !graph.has_edge(a_it->second, b_it->second)) {
      throw ToolkitError(ErrorCode::UnsupportedEdge,
                         "coupling uses (" + pair.first + ", " + pair.second +
                             "), which is not a graph edge");
    }
    if (mass > 0) support[{a_it->second, b_it->second}] = mass;
  }
  return support;
}

// ---------------------------------------------------------------------------
// Inductive subforest extraction

struct IVert {
  int orig;           // index into the original graph's side
  std::string label;  // namespaced, used for tie-breaks
  Rational weight;
};

// Working graph for the induction. `swapped` records whether the local A
// side holds original B-vertices, so emitted edges can be oriented back.
struct IGraph {
  std::vector<IVert> a, b;
  std::set<Edge> edges;  // local indices
  bool swapped = false;

  std::vector<std::vector<int>> a_adjacency() const {
    std::vector<std::vector<int>> adj(a.size());
    for (const auto& [i, j] : edges) adj[i].push_back(j);
    return adj;
  }
  std::vector<std::vector<int>> b_adjacency() const {
    std::vector<std::vector<int>> adj(b.size());
    for (const auto& [i, j] : edges) adj[j].push_back(i);
    return adj;
  }
};

IGraph swap_igraph(IGraph g) {
  std::swap(g.a, g.b);
  std::set<Edge> edges;
  for (const auto& [i, j] : g.edges) edges.emplace(j, i);
  g.edges = std::move(edges);
  g.swapped = !g.swapped;
  return g;
}

std::vector<Edge> solve_inductive(IGraph g);

Edge emit(const IGraph& g, int i, int j) {
  if (g.swapped) return {g.b[j].orig, g.a[i].orig};
  return {g.a[i].orig, g.b[j].orig};
}

// Induced subgraph on the given local vertex subsets.
IGraph induced(const IGraph& g, const std::set<int>& a_keep,
               const std::set<int>& b_keep) {
  IGraph sub;
  sub.swapped = g.swapped;
  std::map<int, int> a_map, b_map;
  for (int i : a_keep) {
    a_map[i] = static_cast<int>(sub.a.size());
    sub.a.push_back(g.a[i]);
  }
  for (int j : b_keep) {
    b_map[j] = static_cast<int>(sub.b.size());
    sub.b.push_back(g.b[j]);
  }
  for (const auto& [i, j] : g.edges) {
    if (a_keep.count(i) && b_keep.count(j)) {
      sub.edges.emplace(a_map[i], b_map[j]);
    }
  }
  return sub;
}

// Splits at a tight subset U of the local A side and recurses on both
// halves. The split keeps U with its whole neighborhood, so no edge
// crosses the two parts.
std::vector<Edge> split_at_tight_set(const IGraph& g, const std::set<int>& u) {
  auto a_adj = g.a_adjacency();
  std::set<int> nbrs;
  for (int i : u) nbrs.insert(a_adj[i].begin(), a_adj[i].end());

  std::set<int> a_rest, b_rest;
  for (int i = 0; i < static_cast<int>(g.a.size()); ++i) {
    if (!u.count(i)) a_rest.insert(i);
  }
  for (int j = 0; j < static_cast<int>(g.b.size()); ++j) {
    if (!nbrs.count(j)) b_rest.insert(j);
  }

  std::vector<Edge> forest = solve_inductive(induced(g, u, nbrs));
  std::vector<Edge> rest = solve_inductive(induced(g, a_rest, b_rest));
  forest.insert(forest.end(), rest.begin(), rest.end());
  return forest;
}

// Searches the proper nonempty subsets of the local A side for a tight
// set, in ascending mask order. Enumeration is exponential, which is why
// the public entry point caps the instance size.
std::optional<std::set<int>> find_tight_set(const IGraph& g) {
  const int n = static_cast<int>(g.a.size());
  if (n < 2) return std::nullopt;
  auto a_adj = g.a_adjacency();
  for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
    Rational wu = 0, wn = 0;
    std::vector<bool> seen(g.b.size(), false);
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      wu += g.a[i].weight;
      for (int j : a_adj[i]) {
        if (!seen[j]) {
          seen[j] = true;
          wn += g.b[j].weight;
        }
      }
    }
    if (wu == wn) {
      std::set<int> u;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) u.insert(i);
      }
      return u;
    }
  }
  return std::nullopt;
}

bool igraph_acyclic(const IGraph& g) {
  const int na = static_cast<int>(g.a.size());
  std::vector<int> parent(na + g.b.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [i, j] : g.edges) {
    int u = find(i), v = find(na + j);
    if (u == v) return false;
    parent[u] = v;
  }
  return true;
}

// Case 2 of the induction, with the minimum-weight vertex on the local A
// side: shift delta off x onto a synthetic twin hanging from y, which
// makes D + twin tight, then split there; or peel x entirely when the
// minimizing subset is all of A - x.
std::vector<Edge> solve_case2(IGraph g, int x) {
  auto a_adj = g.a_adjacency();
  assert(!a_adj[x].empty());
  int y = *std::min_element(
      a_adj[x].begin(), a_adj[x].end(),
      [&g](int l, int r) { return g.b[l].label < g.b[r].label; });

  auto b_adj = g.b_adjacency();
  const std::set<int> n_of_y(b_adj[y].begin(), b_adj[y].end());

  // delta = min over {U subset of A : x not in U, U meets N(y)} of
  // w(N(U)) - w(U), with the lexicographically smallest minimizer.
  const int n = static_cast<int>(g.a.size());
  std::optional<Rational> delta;
  std::vector<int> d_subset;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    if (mask >> x & 1u) continue;
    bool meets = false;
    Rational wu = 0, wn = 0;
    std::vector<bool> seen(g.b.size(), false);
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      subset.push_back(i);
      if (n_of_y.count(i)) meets = true;
      wu += g.a[i].weight;
      for (int j : a_adj[i]) {
        if (!seen[j]) {
          seen[j] = true;
          wn += g.b[j].weight;
        }
      }
    }
    if (!meets) continue;
    Rational value = wn - wu;
    if (!delta || value < *delta ||
        (value == *delta &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      d_subset.begin(), d_subset.end()))) {
      delta = value;
      d_subset = std::move(subset);
    }
  }
  assert(delta.has_value());

  if (static_cast<int>(d_subset.size()) == n - 1) {
    // D = A - x: drop x and its weight off y, recurse, reattach {x,y}.
    Edge xy = emit(g, x, y);
    g.b[y].weight -= *delta;
    std::set<int> a_keep, b_keep;
    for (int i = 0; i < n; ++i) {
      if (i != x) a_keep.insert(i);
    }
    for (int j = 0; j < static_cast<int>(g.b.size()); ++j) b_keep.insert(j);
    std::vector<Edge> forest = solve_inductive(induced(g, a_keep, b_keep));
    forest.push_back(xy);
    return forest;
  }

  // Synthetic twin: carries x's original index, so the edge swap
  // {twin,y} -> {x,y} happens in the emitted edge automatically. The twin
  // ends up in the tight half and x in the other, so the swap cannot
  // close a cycle.
  IVert twin{g.a[x].orig, g.a[x].label + "~", *delta};
  g.a[x].weight -= *delta;
  int twin_idx = static_cast<int>(g.a.size());
  g.a.push_back(twin);
  g.edges.emplace(twin_idx, y);

  std::set<int> u(d_subset.begin(), d_subset.end());
  u.insert(twin_idx);
  return split_at_tight_set(g, u);
}

std::vector<Edge> solve_inductive(IGraph g) {
  // Isolated vertices carry no edges; the condition forces their weight
  // to zero, so they can be dropped outright.
  {
    std::vector<bool> a_used(g.a.size(), false), b_used(g.b.size(), false);
    for (const auto& [i, j] : g.edges) {
      a_used[i] = true;
      b_used[j] = true;
    }
    std::set<int> a_keep, b_keep;
    for (int i = 0; i < static_cast<int>(g.a.size()); ++i) {
      if (a_used[i]) {
        a_keep.insert(i);
      } else if (g.a[i].weight != 0) {
        throw ToolkitError(ErrorCode::ConditionViolated,
                           "isolated vertex " + g.a[i].label +
                               " has positive weight");
      }
    }
    for (int j = 0; j < static_cast<int>(g.b.size()); ++j) {
      if (b_used[j]) {
        b_keep.insert(j);
      } else if (g.b[j].weight != 0) {
        throw ToolkitError(ErrorCode::ConditionViolated,
                           "isolated vertex " + g.b[j].label +
                               " has positive weight");
      }
    }
    if (a_keep.size() != g.a.size() || b_keep.size() != g.b.size()) {
      g = induced(g, a_keep, b_keep);
    }
  }

  if (g.edges.empty()) return {};
  if (igraph_acyclic(g)) {
    std::vector<Edge> forest;
    forest.reserve(g.edges.size());
    for (const auto& [i, j] : g.edges) forest.push_back(emit(g, i, j));
    return forest;
  }

  // Case 1: split at a proper tight set, A side first.
  if (auto u = find_tight_set(g)) return split_at_tight_set(g, *u);
  if (auto u = find_tight_set(swap_igraph(g))) {
    return split_at_tight_set(swap_igraph(g), *u);
  }

  // Case 2: all proper subsets are strict. Pick the minimum-weight vertex,
  // label as tie-break, and mirror when it lies on the B side.
  int best_a = -1, best_b = -1;
  for (int i = 0; i < static_cast<int>(g.a.size()); ++i) {
    if (best_a < 0 || g.a[i].weight < g.a[best_a].weight ||
        (g.a[i].weight == g.a[best_a].weight &&
         g.a[i].label < g.a[best_a].label)) {
      best_a = i;
    }
  }
  for (int j = 0; j < static_cast<int>(g.b.size()); ++j) {
    if (best_b < 0 || g.b[j].weight < g.b[best_b].weight ||
        (g.b[j].weight == g.b[best_b].weight &&
         g.b[j].label < g.b[best_b].label)) {
      best_b = j;
    }
  }
  if (g.b[best_b].weight < g.a[best_a].weight ||
      (g.b[best_b].weight == g.a[best_a].weight &&
       g.b[best_b].label < g.a[best_a].label)) {
    return solve_case2(swap_igraph(std::move(g)), best_b);
  }
  return solve_case2(std::move(g), best_a);
}

}  // namespace

CouplingOutcome couple_via_flow(const Instance& instance) {
  WeightedBipartiteGraph graph = to_graph(instance);
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  if (auto cert = min_cut_violator(network, flow, graph)) return *cert;

  Coupling coupling;
  for (const auto& [arc, mass] : flow.ab_flow) {
    coupling.mass[{graph.plain_a(arc.first), graph.plain_b(arc.second)}] =
        mass;
  }
  return coupling;
}

std::pair<Forest, Coupling> cancel_cycles(const WeightedBipartiteGraph& graph,
                                          const Coupling& coupling) {
  Support support = support_from_coupling(graph, coupling);
  const int num_a = graph.num_a();

  while (true) {
    std::vector<int> cycle = find_cycle(num_a, graph.num_b(), support);
    if (cycle.empty()) break;

    const size_t len = cycle.size();
    std::vector<Edge> cycle_edges(len);
    for (size_t i = 0; i < len; ++i) {
      cycle_edges[i] = walk_edge(num_a, cycle[i], cycle[(i + 1) % len]);
    }

    // epsilon = the minimum mass on the cycle; the minimizing edge, ties
    // broken by the smallest edge, fixes which alternating class shrinks.
    size_t star = 0;
    for (size_t i = 1; i < len; ++i) {
      const Rational& mi = support.at(cycle_edges[i]);
      const Rational& ms = support.at(cycle_edges[star]);
      if (mi < ms || (mi == ms && cycle_edges[i] < cycle_edges[star])) {
        star = i;
      }
    }
    Rational epsilon = support.at(cycle_edges[star]);
    for (size_t i = 0; i < len; ++i) {
      if (i % 2 == star % 2) {
        support[cycle_edges[i]] -= epsilon;
      } else {
        support[cycle_edges[i]] += epsilon;
      }
    }
    for (auto it = support.begin(); it != support.end();) {
      it = it->second == 0 ? support.erase(it) : std::next(it);
    }
  }

  Forest forest;
  forest.graph = graph;
  Coupling canceled;
  for (const auto& [edge, mass] : support) {
    forest.edges.push_back(edge);
    canceled.mass[{graph.plain_a(edge.first), graph.plain_b(edge.second)}] =
        mass;
  }
  return {std::move(forest), std::move(canceled)};
}

Forest subforest_by_cycle_canceling(const WeightedBipartiteGraph& graph,
                                    const Coupling& coupling) {
  return cancel_cycles(graph, coupling).first;
}

Forest subforest_inductive(const WeightedBipartiteGraph& graph, int cap) {
  if (graph.num_a() + graph.num_b() > cap) {
    throw ToolkitError(ErrorCode::SizeCapExceeded,
                       "|A|+|B| = " +
                           std::to_string(graph.num_a() + graph.num_b()) +
                           " exceeds the inductive cap " +
                           std::to_string(cap));
  }
  if (graph.weight_a_total() != graph.weight_b_total()) {
    throw ToolkitError(ErrorCode::ConditionViolated,
                       "w(A) != w(B): " +
                           format_rational(graph.weight_a_total()) + " vs " +
                           format_rational(graph.weight_b_total()));
  }
  BruteforceVerdict verdict =
      check_condition_bruteforce(graph, graph.num_a());
  if (!verdict.satisfied) {
    throw ToolkitError(ErrorCode::ConditionViolated,
                       "input graph fails w(U) <= w(N(U))");
  }

  IGraph g;
  for (int a = 0; a < graph.num_a(); ++a) {
    g.a.push_back({a, graph.a_labels[a], graph.a_weights[a]});
  }
  for (int b = 0; b < graph.num_b(); ++b) {
    g.b.push_back({b, graph.b_labels[b], graph.b_weights[b]});
  }
  for (const auto& edge : graph.edges) g.edges.insert(edge);

  Forest forest;
  forest.graph = graph;
  forest.edges = solve_inductive(std::move(g));
  std::sort(forest.edges.begin(), forest.edges.end());
  return forest;
}

Coupling edge_weights_from_forest(const Forest& forest) {
  if (!forest_is_valid(forest)) {
    throw ToolkitError(ErrorCode::NotAForest,
                       "edge set is cyclic or not a subgraph of the host");
  }
  const WeightedBipartiteGraph& graph = forest.graph;
  const int num_a = graph.num_a();
  const int n = num_a + graph.num_b();

  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : forest.edges) {
    adj[a].push_back(num_a + b);
    adj[num_a + b].push_back(a);
  }
  std::vector<Rational> weight(n);
  for (int a = 0; a < num_a; ++a) weight[a] = graph.a_weights[a];
  for (int b = 0; b < graph.num_b(); ++b) {
    weight[num_a + b] = graph.b_weights[b];
  }
  auto label = [&](int v) {
    return v < num_a ? graph.a_labels[v] : graph.b_labels[v - num_a];
  };

  std::vector<int> degree(n);
  std::vector<bool> active(n, true);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());

  Coupling result;
  int remaining = n;
  while (remaining > 0) {
    // Stranded vertices must have exhausted their weight.
    for (int v = 0; v < n; ++v) {
      if (active[v] && degree[v] == 0) {
        if (weight[v] != 0) {
          throw ToolkitError(ErrorCode::ConditionViolated,
                             "vertex " + label(v) + " stranded with weight " +
                                 format_rational(weight[v]));
        }
        active[v] = false;
        --remaining;
      }
    }
    if (remaining == 0) break;

    int leaf = -1;
    for (int v = 0; v < n; ++v) {
      if (active[v] && degree[v] == 1 &&
          (leaf < 0 || label(v) < label(leaf))) {
        leaf = v;
      }
    }
    if (leaf < 0) {
      throw ToolkitError(ErrorCode::NotAForest, "no degree-1 vertex left");
    }
    int other = -1;
    for (int u : adj[leaf]) {
      if (active[u]) other = u;
    }
    if (weight[leaf] > weight[other]) {
      throw ToolkitError(ErrorCode::ConditionViolated,
                         "leaf " + label(leaf) + " outweighs its neighbor " +
                             label(other));
    }
    if (weight[leaf] > 0) {
      int a = leaf < num_a ? leaf : other;
      int b = leaf < num_a ? other - num_a : leaf - num_a;
      result.mass[{graph.plain_a(a), graph.plain_b(b)}] = weight[leaf];
    }
    weight[other] -= weight[leaf];
    weight[leaf] = 0;
    active[leaf] = false;
    --remaining;
    --degree[other];
    degree[leaf] = 0;
  }
  return result;
}

CouplingOutcome couple_forest(const Instance& instance) {
  CouplingOutcome outcome = couple_via_flow(instance);
  if (std::holds_alternative<Certificate>(outcome)) return outcome;

  WeightedBipartiteGraph graph = to_graph(instance);
  auto [forest, canceled] =
      cancel_cycles(graph, std::get<Coupling>(outcome));
  return edge_weights_from_forest(forest);
}

}  // namespace couplings
