#include "couplings/matching.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/flow.hpp"

namespace couplings {

namespace {

bool try_augment(const WeightedBipartiteGraph& graph, int a,
                 std::vector<bool>& visited, std::vector<int>& match_b) {
  for (int b : graph.a_adj[a]) {
    if (visited[b]) continue;
    visited[b] = true;
    if (match_b[b] < 0 || try_augment(graph, match_b[b], visited, match_b)) {
      match_b[b] = a;
      return true;
    }
  }
  return false;
}

std::vector<int> match_b_array(const WeightedBipartiteGraph& graph) {
  std::vector<int> match_b(graph.num_b(), -1);
  for (int a = 0; a < graph.num_a(); ++a) {
    std::vector<bool> visited(graph.num_b(), false);
    try_augment(graph, a, visited, match_b);
  }
  return match_b;
}

Matching matching_from_array(const std::vector<int>& match_b) {
  Matching m;
  for (int b = 0; b < static_cast<int>(match_b.size()); ++b) {
    if (match_b[b] >= 0) m.edges.emplace_back(match_b[b], b);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

// Alternating reachability from the unmatched A-vertices: free edges
// forward, matched edges backward. The reached A-set U satisfies
// |U| - |N(U)| = number of unmatched A-vertices.
std::vector<int> koenig_violator(const WeightedBipartiteGraph& graph,
                                 const std::vector<int>& match_b) {
  std::vector<int> match_a(graph.num_a(), -1);
  for (int b = 0; b < graph.num_b(); ++b) {
    if (match_b[b] >= 0) match_a[match_b[b]] = b;
  }
  std::vector<bool> in_u(graph.num_a(), false), seen_b(graph.num_b(), false);
  std::vector<int> stack;
  for (int a = 0; a < graph.num_a(); ++a) {
    if (match_a[a] < 0) {
      in_u[a] = true;
      stack.push_back(a);
    }
  }
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b : graph.a_adj[a]) {
      if (seen_b[b]) continue;
      seen_b[b] = true;
      if (match_b[b] >= 0 && !in_u[match_b[b]]) {
        in_u[match_b[b]] = true;
        stack.push_back(match_b[b]);
      }
    }
  }
  std::vector<int> u;
  for (int a = 0; a < graph.num_a(); ++a) {
    if (in_u[a]) u.push_back(a);
  }
  return u;
}

void require_equal_sides(const WeightedBipartiteGraph& graph) {
  if (graph.num_a() != graph.num_b()) {
    throw ToolkitError(ErrorCode::UnequalSides,
                       "|A| = " + std::to_string(graph.num_a()) +
                           " but |B| = " + std::to_string(graph.num_b()));
  }
}

// Unit-weight subforest via the flow route: couple the unit weights over
// the edges, then cancel cycles.
Forest unit_subforest(const WeightedBipartiteGraph& graph) {
  WeightedBipartiteGraph unit = graph;
  std::fill(unit.a_weights.begin(), unit.a_weights.end(), Rational(1));
  std::fill(unit.b_weights.begin(), unit.b_weights.end(), Rational(1));

  FlowNetwork network = build_network(unit);
  MaxFlowResult flow = max_flow(network);
  if (flow.value != network.total) {
    throw ToolkitError(ErrorCode::ConditionViolated,
                       "graph fails the marriage condition");
  }
  Coupling coupling;
  for (const auto& [arc, mass] : flow.ab_flow) {
    coupling.mass[{unit.plain_a(arc.first), unit.plain_b(arc.second)}] = mass;
  }
  return subforest_by_cycle_canceling(unit, coupling);
}

}  // namespace

Matching max_matching(const WeightedBipartiteGraph& graph) {
  return matching_from_array(match_b_array(graph));
}

MatchingOutcome perfect_matching(const WeightedBipartiteGraph& graph) {
  require_equal_sides(graph);
  std::vector<int> match_b = match_b_array(graph);
  Matching m = matching_from_array(match_b);
  if (m.size() == graph.num_a()) return m;
  return koenig_violator(graph, match_b);
}

Matching matching_from_forest(const WeightedBipartiteGraph& graph) {
  require_equal_sides(graph);
  if (graph.num_a() == 0) return {};

  Forest forest = unit_subforest(graph);

  // A forest under the marriage condition has no isolated vertex, so a
  // degree-1 vertex exists; match it with its unique neighbor and recurse
  // on the graph without the pair.
  const int num_a = graph.num_a();
  std::vector<int> degree(num_a + graph.num_b(), 0);
  for (const auto& [a, b] : forest.edges) {
    ++degree[a];
    ++degree[num_a + b];
  }
  auto label = [&](int v) {
    return v < num_a ? graph.a_labels[v] : graph.b_labels[v - num_a];
  };
  int leaf = -1;
  for (int v = 0; v < num_a + graph.num_b(); ++v) {
    if (degree[v] == 1 && (leaf < 0 || label(v) < label(leaf))) leaf = v;
  }
  if (leaf < 0) {
    throw ToolkitError(ErrorCode::ConditionViolated,
                       "subforest has no degree-1 vertex");
  }
  int edge_a = -1, edge_b = -1;
  for (const auto& [a, b] : forest.edges) {
    if (a == leaf || num_a + b == leaf) {
      edge_a = a;
      edge_b = b;
      break;
    }
  }

  // Induced subgraph without the matched pair, tracked by original index.
  std::vector<int> a_keep, b_keep;
  for (int a = 0; a < num_a; ++a) {
    if (a != edge_a) a_keep.push_back(a);
  }
  for (int b = 0; b < graph.num_b(); ++b) {
    if (b != edge_b) b_keep.push_back(b);
  }
  std::vector<std::string> a_labels, b_labels;
  std::vector<Rational> a_weights, b_weights;
  for (int a : a_keep) {
    a_labels.push_back(graph.a_labels[a]);
    a_weights.push_back(graph.a_weights[a]);
  }
  for (int b : b_keep) {
    b_labels.push_back(graph.b_labels[b]);
    b_weights.push_back(graph.b_weights[b]);
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<int> a_map(num_a, -1), b_map(graph.num_b(), -1);
  for (size_t i = 0; i < a_keep.size(); ++i) a_map[a_keep[i]] = i;
  for (size_t j = 0; j < b_keep.size(); ++j) b_map[b_keep[j]] = j;
  for (const auto& [a, b] : graph.edges) {
    if (a_map[a] >= 0 && b_map[b] >= 0) {
      edges.emplace_back(a_map[a], b_map[b]);
    }
  }
  WeightedBipartiteGraph rest =
      make_graph(std::move(a_labels), std::move(b_labels),
                 std::move(a_weights), std::move(b_weights), std::move(edges));

  Matching sub = matching_from_forest(rest);
  Matching result;
  result.edges.emplace_back(edge_a, edge_b);
  for (const auto& [a, b] : sub.edges) {
    result.edges.emplace_back(a_keep[a], b_keep[b]);
  }
  std::sort(result.edges.begin(), result.edges.end());
  return result;
}

MatchingOutcome matching_with_deficiency_augmented(
    const WeightedBipartiteGraph& graph, int k) {
  require_equal_sides(graph);
  const int n = graph.num_a();

  std::vector<std::string> a_labels = graph.a_labels;
  std::vector<std::string> b_labels = graph.b_labels;
  std::vector<Rational> a_weights = graph.a_weights;
  std::vector<Rational> b_weights = graph.b_weights;
  for (int i = 0; i < k; ++i) {
    a_labels.push_back("A:+" + std::to_string(i));
    b_labels.push_back("B:+" + std::to_string(i));
    a_weights.push_back(1);
    b_weights.push_back(1);
  }
  std::vector<std::pair<int, int>> edges = graph.edges;
  for (int i = 0; i < k; ++i) {
    for (int b = 0; b < n + k; ++b) edges.emplace_back(n + i, b);
    for (int a = 0; a < n; ++a) edges.emplace_back(a, n + i);
  }
  WeightedBipartiteGraph augmented =
      make_graph(std::move(a_labels), std::move(b_labels),
                 std::move(a_weights), std::move(b_weights), std::move(edges));

  MatchingOutcome outcome = perfect_matching(augmented);
  if (std::holds_alternative<std::vector<int>>(outcome)) {
    // A violating set in the augmented graph cannot contain a universal
    // vertex, so it maps straight back.
    std::vector<int> u;
    for (int a : std::get<std::vector<int>>(outcome)) {
      if (a < n) u.push_back(a);
    }
    return u;
  }

  Matching m;
  for (const auto& [a, b] : std::get<Matching>(outcome).edges) {
    if (a < n && b < n) m.edges.emplace_back(a, b);
  }
  return m;
}

MatchingOutcome matching_with_deficiency(const WeightedBipartiteGraph& graph,
                                         int k) {
  require_equal_sides(graph);
  const int n = graph.num_a();

  std::vector<int> match_b = match_b_array(graph);
  Matching direct = matching_from_array(match_b);
  bool feasible = direct.size() >= n - k;

  MatchingOutcome augmented = matching_with_deficiency_augmented(graph, k);
  bool augmented_feasible = std::holds_alternative<Matching>(augmented);
  if (feasible != augmented_feasible) {
    throw std::logic_error(
        "deficiency matching: direct and augmented paths disagree");
  }

  if (feasible) return direct;
  return koenig_violator(graph, match_b);
}

Coupling couple_with_deficiency_blowup(const Instance& instance,
                                       const Rational& epsilon, int cap) {
  if (epsilon < 0) {
    throw ToolkitError(ErrorCode::EpsilonTooSmall, "epsilon must be >= 0");
  }
  Deficiency deficiency = minimal_deficiency(instance);
  if (epsilon < deficiency.epsilon) {
    throw ToolkitError(ErrorCode::EpsilonTooSmall,
                       "epsilon " + format_rational(epsilon) +
                           " is below the minimal deficiency " +
                           format_rational(deficiency.epsilon));
  }
  const Rational eps = std::min(epsilon, Rational(1));

  // N makes every copy count and k = eps*N integral.
  Integer n_scale = denominator(eps);
  for (const auto& [label, mass] : instance.p) {
    n_scale = lcm(n_scale, denominator(mass));
  }
  for (const auto& [label, mass] : instance.p_prime) {
    n_scale = lcm(n_scale, denominator(mass));
  }
  const Integer copies_bound =
      n_scale * Integer(instance.a_labels.size() + instance.b_labels.size());
  if (copies_bound > cap) {
    throw ToolkitError(ErrorCode::BlowUpTooLarge,
                       "N*(|A|+|B|) = " + copies_bound.str() +
                           " exceeds the cap " + std::to_string(cap));
  }
  const int big_n = static_cast<int>(n_scale);
  const int k = static_cast<int>(Integer(numerator(eps) *
                                         (n_scale / denominator(eps))));

  // Blown-up graph: N*w(x) unit copies per vertex, copies adjacent iff the
  // originals are related.
  WeightedBipartiteGraph graph = to_graph(instance);
  std::vector<int> a_owner, b_owner;  // copy index -> original vertex
  std::vector<int> a_first(graph.num_a() + 1, 0),
      b_first(graph.num_b() + 1, 0);
  for (int a = 0; a < graph.num_a(); ++a) {
    int count = static_cast<int>(
        Integer(numerator(graph.a_weights[a]) *
                (n_scale / denominator(graph.a_weights[a]))));
    a_first[a + 1] = a_first[a] + count;
    for (int i = 0; i < count; ++i) a_owner.push_back(a);
  }
  for (int b = 0; b < graph.num_b(); ++b) {
    int count = static_cast<int>(
        Integer(numerator(graph.b_weights[b]) *
                (n_scale / denominator(graph.b_weights[b]))));
    b_first[b + 1] = b_first[b] + count;
    for (int i = 0; i < count; ++i) b_owner.push_back(b);
  }

  std::vector<std::string> a_labels, b_labels;
  for (size_t i = 0; i < a_owner.size(); ++i) {
    a_labels.push_back(graph.a_labels[a_owner[i]] + "#" + std::to_string(i));
  }
  for (size_t j = 0; j < b_owner.size(); ++j) {
    b_labels.push_back(graph.b_labels[b_owner[j]] + "#" + std::to_string(j));
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : graph.edges) {
    for (int i = a_first[a]; i < a_first[a + 1]; ++i) {
      for (int j = b_first[b]; j < b_first[b + 1]; ++j) {
        edges.emplace_back(i, j);
      }
    }
  }
  WeightedBipartiteGraph blown = make_graph(
      std::move(a_labels), std::move(b_labels),
      std::vector<Rational>(a_owner.size(), 1),
      std::vector<Rational>(b_owner.size(), 1), std::move(edges));

  Matching matched = max_matching(blown);
  if (matched.size() < big_n - k) {
    throw std::logic_error("blow-up matching smaller than N - k");
  }
  // Trim to exactly N - k edges so k copies per side stay unmatched, then
  // pair the leftovers in sorted order (these pairs may fall off R).
  matched.edges.resize(big_n - k);

  std::vector<bool> a_used(a_owner.size(), false), b_used(b_owner.size(), false);
  for (const auto& [i, j] : matched.edges) {
    a_used[i] = true;
    b_used[j] = true;
  }
  std::vector<int> a_free, b_free;
  for (size_t i = 0; i < a_used.size(); ++i) {
    if (!a_used[i]) a_free.push_back(i);
  }
  for (size_t j = 0; j < b_used.size(); ++j) {
    if (!b_used[j]) b_free.push_back(j);
  }
  for (size_t i = 0; i < a_free.size(); ++i) {
    matched.edges.emplace_back(a_free[i], b_free[i]);
  }

  Coupling coupling;
  for (const auto& [i, j] : matched.edges) {
    auto key = std::make_pair(graph.plain_a(a_owner[i]),
                              graph.plain_b(b_owner[j]));
    coupling.mass[key] += Rational(1, big_n);
  }
  return coupling;
}

CouplingOutcome couple_with_deficiency_flow(const Instance& instance,
                                            const Rational& epsilon) {
  if (epsilon < 0) {
    throw ToolkitError(ErrorCode::EpsilonTooSmall, "epsilon must be >= 0");
  }
  WeightedBipartiteGraph graph = to_graph(instance);
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  Rational shortfall = network.total - flow.value;
  if (shortfall > epsilon) {
    return *min_cut_violator(network, flow, graph);
  }

  Coupling coupling;
  for (const auto& [arc, mass] : flow.ab_flow) {
    coupling.mass[{graph.plain_a(arc.first), graph.plain_b(arc.second)}] =
        mass;
  }

  // Complete the unrouted mass off-relation, northwest-corner over the
  // instance ordering. Flow maximality means no completed pair lies on R.
  std::vector<Rational> row(graph.num_a()), col(graph.num_b());
  for (int a = 0; a < graph.num_a(); ++a) {
    row[a] = network.source_cap[a] - flow.source_flow[a];
  }
  for (int b = 0; b < graph.num_b(); ++b) {
    col[b] = network.sink_cap[b] - flow.sink_flow[b];
  }
  int b = 0;
  for (int a = 0; a < graph.num_a(); ++a) {
    while (row[a] > 0) {
      while (b < graph.num_b() && col[b] == 0) ++b;
      Rational step = std::min(row[a], col[b]);
      coupling.mass[{graph.plain_a(a), graph.plain_b(b)}] += step;
      row[a] -= step;
      col[b] -= step;
    }
  }
  return coupling;
}

}  // namespace couplings
