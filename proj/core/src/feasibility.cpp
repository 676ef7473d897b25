#include "couplings/feasibility.hpp"

#include <algorithm>

#include "couplings/errors.hpp"
#include "couplings/flow.hpp"

namespace couplings {

namespace {

std::vector<int> subset_from_mask(unsigned long mask, int n) {
  std::vector<int> subset;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) subset.push_back(i);
  }
  return subset;
}

}  // namespace

BruteforceVerdict check_condition_bruteforce(const WeightedBipartiteGraph& graph,
                                             int cap) {
  const int n = graph.num_a();
  if (n > cap) {
    throw ToolkitError(ErrorCode::SubsetCapExceeded,
                       "|A| = " + std::to_string(n) +
                           " exceeds the brute-force cap " +
                           std::to_string(cap));
  }

  BruteforceVerdict verdict;
  verdict.satisfied = true;
  verdict.worst_value = 0;       // the empty set achieves 0
  verdict.worst_subset.clear();  // and is the lexicographic minimum

  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    Rational wu = 0;
    std::vector<bool> seen(graph.num_b(), false);
    Rational wn = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      wu += graph.a_weights[i];
      for (int b : graph.a_adj[i]) {
        if (!seen[b]) {
          seen[b] = true;
          wn += graph.b_weights[b];
        }
      }
    }
    Rational value = wu - wn;
    if (value > 0) verdict.satisfied = false;
    if (value > verdict.worst_value) {
      verdict.worst_value = value;
      verdict.worst_subset = subset_from_mask(mask, n);
    } else if (value == verdict.worst_value) {
      std::vector<int> subset = subset_from_mask(mask, n);
      if (std::lexicographical_compare(subset.begin(), subset.end(),
                                       verdict.worst_subset.begin(),
                                       verdict.worst_subset.end())) {
        verdict.worst_subset = std::move(subset);
      }
    }
  }
  return verdict;
}

FlowVerdict check_condition_flow(const WeightedBipartiteGraph& graph) {
  if (graph.weight_a_total() != graph.weight_b_total()) {
    throw ToolkitError(ErrorCode::UnbalancedTotals,
                       "w(A) = " + format_rational(graph.weight_a_total()) +
                           " but w(B) = " +
                           format_rational(graph.weight_b_total()));
  }
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  FlowVerdict verdict;
  verdict.certificate = min_cut_violator(network, flow, graph);
  verdict.satisfied = !verdict.certificate.has_value();
  return verdict;
}

Deficiency minimal_deficiency(const Instance& instance) {
  WeightedBipartiteGraph graph = to_graph(instance);
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  Deficiency result;
  result.epsilon = network.total - flow.value;
  result.achiever = min_cut_violator(network, flow, graph);
  return result;
}

}  // namespace couplings
