#include <doctest.h>

#include <random>

#include "couplings/flow.hpp"
#include "couplings/generate.hpp"
#include "couplings/graph.hpp"

#include "helpers.hpp"

using namespace couplings;
using namespace couplings::testing;

namespace {

// Independent oracle: worst subset violation by direct enumeration,
// without going through the library's brute-force checker.
Rational worst_violation(const WeightedBipartiteGraph& graph) {
  const int n = graph.num_a();
  Rational worst = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Rational wu = 0, wn = 0;
    std::vector<bool> seen(graph.num_b(), false);
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      wu += graph.a_weights[i];
      for (int b : graph.a_adj[i]) {
        if (!seen[b]) {
          seen[b] = true;
          wn += graph.b_weights[b];
        }
      }
    }
    Rational violation = wu - wn;
    if (violation > worst) worst = violation;
  }
  return worst;
}

}  // namespace

TEST_CASE("max_flow on the 1x1 network") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(one_by_one()));
  MaxFlowResult flow = max_flow(build_network(graph));
  CHECK(flow.value == 1);
  CHECK(flow.ab_flow.at({0, 0}) == 1);
}

TEST_CASE("max_flow where half the mass cannot route") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(half_stuck()));
  MaxFlowResult flow = max_flow(build_network(graph));
  CHECK(flow.value == Rational(1, 2));
}

TEST_CASE("max_flow value equals total minus the worst subset violation") {
  std::mt19937 rng(23);
  GeneratorConfig config;
  config.num_a = 6;
  config.num_b = 6;
  config.density_pct = 35;
  for (int trial = 0; trial < 100; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    WeightedBipartiteGraph graph = to_graph(instance);
    FlowNetwork network = build_network(graph);
    MaxFlowResult flow = max_flow(network);
    CHECK(flow.value == network.total - worst_violation(graph));
  }
}

TEST_CASE("min_cut_violator is absent on feasible instances") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(one_by_one()));
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  CHECK(!min_cut_violator(network, flow, graph).has_value());
}

TEST_CASE("min_cut_violator finds the only possible violator") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(half_stuck()));
  FlowNetwork network = build_network(graph);
  MaxFlowResult flow = max_flow(network);
  auto cert = min_cut_violator(network, flow, graph);
  REQUIRE(cert.has_value());
  CHECK(cert->violating_set == std::vector<std::string>{"a2"});
  CHECK(cert->deficiency == Rational(1, 2));
  CHECK(cert->lhs == Rational(1, 2));
  CHECK(cert->rhs == 0);
}

TEST_CASE("certificates recompute and match the enumeration maximum") {
  std::mt19937 rng(29);
  GeneratorConfig config;
  config.num_a = 8;
  config.num_b = 8;
  config.density_pct = 25;  // sparse, so infeasible cases are common
  int infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    WeightedBipartiteGraph graph = to_graph(instance);
    FlowNetwork network = build_network(graph);
    MaxFlowResult flow = max_flow(network);
    auto cert = min_cut_violator(network, flow, graph);
    if (!cert) continue;
    ++infeasible_seen;
    CHECK(certificate_is_valid(*cert, instance));
    CHECK(cert->deficiency == worst_violation(graph));
    CHECK(cert->deficiency == network.total - flow.value);
  }
  CHECK(infeasible_seen > 10);
}

TEST_CASE("flow decomposition of a saturating flow is a valid coupling") {
  std::mt19937 rng(31);
  GeneratorConfig config;
  config.num_a = 6;
  config.num_b = 6;
  config.density_pct = 70;
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    WeightedBipartiteGraph graph = to_graph(instance);
    FlowNetwork network = build_network(graph);
    MaxFlowResult flow = max_flow(network);
    CHECK(flow.value <= network.total);
    if (flow.value != network.total) continue;
    Coupling coupling;
    for (const auto& [arc, mass] : flow.ab_flow) {
      coupling.mass[{graph.plain_a(arc.first), graph.plain_b(arc.second)}] =
          mass;
    }
    CHECK(coupling_is_valid(coupling, instance));
  }
}
