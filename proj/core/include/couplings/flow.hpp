#ifndef COUPLINGS_FLOW_HPP
#define COUPLINGS_FLOW_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "couplings/graph.hpp"
#include "couplings/rational.hpp"

namespace couplings {

// Auxiliary network source -> A -> B -> sink with rational capacities.
// Middle arcs carry capacity w(A), a safe exact stand-in for "unbounded".
struct FlowNetwork {
  int num_a = 0;
  int num_b = 0;
  Rational total;                       // w(A) = w(B)
  std::vector<Rational> source_cap;     // per A-vertex
  std::vector<Rational> sink_cap;       // per B-vertex
  std::vector<std::vector<int>> a_adj;  // relation arcs a -> b
  std::vector<std::vector<int>> b_adj;
};

FlowNetwork build_network(const WeightedBipartiteGraph& graph);

struct MaxFlowResult {
  Rational value;
  std::map<std::pair<int, int>, Rational> ab_flow;  // positive entries only
  std::vector<Rational> source_flow;                // per A-vertex
  std::vector<Rational> sink_flow;                  // per B-vertex
};

/// Shortest-augmenting-path (breadth-first) maximum flow. Exact rational
/// capacities make every augmentation saturate at least one arc, so the
/// search terminates. Deterministic given the vertex ordering.
MaxFlowResult max_flow(const FlowNetwork& network);

/// Reads the canonical min cut off the final residual graph. If the flow
/// value falls short of the total mass, returns the certificate whose
/// violating set U is the set of A-nodes that cannot reach the sink in the
/// residual graph; this U is the maximal set achieving
/// P(U) - P'(N(U)) = total - value. Returns nullopt when the flow
/// saturates the total.
std::optional<Certificate> min_cut_violator(const FlowNetwork& network,
                                            const MaxFlowResult& flow,
                                            const WeightedBipartiteGraph& graph);

}  // namespace couplings

#endif
