#include <doctest.h>

#include <random>

#include "couplings/couple.hpp"
#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/generate.hpp"

#include "helpers.hpp"

using namespace couplings;
using namespace couplings::testing;

namespace {

WeightedBipartiteGraph restrict_to(const WeightedBipartiteGraph& graph,
                                   const std::vector<std::pair<int, int>>& edges) {
  return make_graph(graph.a_labels, graph.b_labels, graph.a_weights,
                    graph.b_weights, edges);
}

}  // namespace

TEST_CASE("couple_via_flow on the minimal instance") {
  auto outcome = couple_via_flow(validate_instance(one_by_one()));
  REQUIRE(std::holds_alternative<Coupling>(outcome));
  CHECK(std::get<Coupling>(outcome).mass.at({"a", "b"}) == 1);
}

TEST_CASE("couple_via_flow returns marginal-exact couplings") {
  Instance instance = validate_instance(two_by_two_uniform());
  auto outcome = couple_via_flow(instance);
  REQUIRE(std::holds_alternative<Coupling>(outcome));
  CHECK(coupling_is_valid(std::get<Coupling>(outcome), instance));
}

TEST_CASE("couple_via_flow surfaces the certificate") {
  auto outcome = couple_via_flow(validate_instance(half_stuck()));
  REQUIRE(std::holds_alternative<Certificate>(outcome));
  CHECK(std::get<Certificate>(outcome).violating_set ==
        std::vector<std::string>{"a2"});
}

TEST_CASE("cycle canceling leaves a forest-supported coupling unchanged") {
  Instance instance = validate_instance(one_by_one());
  WeightedBipartiteGraph graph = to_graph(instance);
  Coupling coupling;
  coupling.mass[{"a", "b"}] = 1;
  auto [forest, canceled] = cancel_cycles(graph, coupling);
  CHECK(forest.edges == graph.edges);
  CHECK(canceled.mass == coupling.mass);
}

TEST_CASE("cycle canceling breaks the uniform 4-cycle") {
  Instance instance = validate_instance(two_by_two_uniform());
  WeightedBipartiteGraph graph = to_graph(instance);
  Coupling uniform;
  for (const auto& pair : instance.relation) {
    uniform.mass[pair] = Rational(1, 4);
  }
  auto [forest, canceled] = cancel_cycles(graph, uniform);
  // Both edges of the decreasing class carry the minimum 1/4, so one
  // cancellation removes two edges at once.
  CHECK(forest.edge_count() == 2);
  CHECK(forest_is_valid(forest));
  CHECK(coupling_is_valid(canceled, instance));
  CHECK(coupling_support_is_forest(canceled));
}

TEST_CASE("cycle canceling rejects off-graph mass") {
  Instance instance = validate_instance(half_stuck());
  WeightedBipartiteGraph graph = to_graph(instance);
  Coupling bad;
  bad.mass[{"a1", "b2"}] = 1;  // not a relation pair
  CHECK_THROWS_AS(subforest_by_cycle_canceling(graph, bad), ToolkitError);
}

TEST_CASE("cycle canceling output satisfies the condition on random instances") {
  std::mt19937 rng(53);
  GeneratorConfig config;
  config.num_a = 8;
  config.num_b = 8;
  config.density_pct = 60;
  int feasible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    auto outcome = couple_via_flow(instance);
    auto* coupling = std::get_if<Coupling>(&outcome);
    if (!coupling) continue;
    ++feasible_seen;
    WeightedBipartiteGraph graph = to_graph(instance);
    auto [forest, canceled] = cancel_cycles(graph, *coupling);
    CHECK(forest_is_valid(forest));
    CHECK(forest.edge_count() <= graph.num_a() + graph.num_b() - 1);
    CHECK(coupling_is_valid(canceled, instance));
    CHECK(check_condition_bruteforce(restrict_to(graph, forest.edges))
              .satisfied);
  }
  CHECK(feasible_seen > 20);
}

TEST_CASE("subforest_inductive base case: a single edge") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(one_by_one()));
  Forest forest = subforest_inductive(graph);
  CHECK(forest.edges == graph.edges);
}

TEST_CASE("subforest_inductive on the complete uniform 2x2") {
  WeightedBipartiteGraph graph =
      to_graph(validate_instance(two_by_two_uniform()));
  Forest forest = subforest_inductive(graph);
  CHECK(forest_is_valid(forest));
  CHECK(forest.edge_count() <= 3);
  CHECK(check_condition_bruteforce(restrict_to(graph, forest.edges)).satisfied);
}

TEST_CASE("subforest_inductive enforces its preconditions") {
  WeightedBipartiteGraph bad = to_graph(validate_instance(half_stuck()));
  CHECK_THROWS_AS(subforest_inductive(bad), ToolkitError);

  std::mt19937 rng(59);
  WeightedBipartiteGraph big = random_unit_bipartite_graph(15, 15, 80, rng);
  try {
    subforest_inductive(big);
    FAIL("expected SizeCapExceeded");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::SizeCapExceeded);
  }
}

TEST_CASE("both subforest algorithms produce condition-satisfying forests") {
  std::mt19937 rng(61);
  GeneratorConfig config;
  config.num_a = 5;
  config.num_b = 5;
  config.density_pct = 65;
  int feasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    auto outcome = couple_via_flow(instance);
    auto* coupling = std::get_if<Coupling>(&outcome);
    if (!coupling) continue;
    ++feasible_seen;
    WeightedBipartiteGraph graph = to_graph(instance);

    Forest canceled = subforest_by_cycle_canceling(graph, *coupling);
    Forest inductive = subforest_inductive(graph);
    for (const Forest& forest : {canceled, inductive}) {
      CHECK(forest_is_valid(forest));
      CHECK(check_condition_bruteforce(restrict_to(graph, forest.edges))
                .satisfied);
    }
  }
  CHECK(feasible_seen > 10);
}

TEST_CASE("leaf stripping on a single edge") {
  WeightedBipartiteGraph graph = to_graph(validate_instance(one_by_one()));
  Forest forest{graph, graph.edges};
  Coupling coupling = edge_weights_from_forest(forest);
  CHECK(coupling.mass.at({"a", "b"}) == 1);
}

TEST_CASE("leaf stripping on a path is forced") {
  // a1 - b1 - a2 with weights 1/3, 1, 2/3.
  Instance instance = make_instance({{"a1", "1/3"}, {"a2", "2/3"}},
                                    {{"b1", "1"}},
                                    {{"a1", "b1"}, {"a2", "b1"}});
  WeightedBipartiteGraph graph = to_graph(validate_instance(instance));
  Forest forest{graph, graph.edges};
  Coupling coupling = edge_weights_from_forest(forest);
  CHECK(coupling.mass.at({"a1", "b1"}) == Rational(1, 3));
  CHECK(coupling.mass.at({"a2", "b1"}) == Rational(2, 3));
}

TEST_CASE("leaf stripping detects cycles and stranded weight") {
  WeightedBipartiteGraph graph =
      to_graph(validate_instance(two_by_two_uniform()));
  Forest cyclic{graph, graph.edges};  // the full 4-cycle
  try {
    edge_weights_from_forest(cyclic);
    FAIL("expected NotAForest");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::NotAForest);
  }

  // Spanning forest that leaves a2 isolated with positive weight.
  Forest stranded{graph, {{0, 0}, {0, 1}}};
  try {
    edge_weights_from_forest(stranded);
    FAIL("expected ConditionViolated");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::ConditionViolated);
  }
}

TEST_CASE("leaf stripping reproduces the vertex weights on random forests") {
  std::mt19937 rng(67);
  GeneratorConfig config;
  config.num_a = 7;
  config.num_b = 7;
  config.density_pct = 60;
  int feasible_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    auto outcome = couple_via_flow(instance);
    auto* coupling = std::get_if<Coupling>(&outcome);
    if (!coupling) continue;
    ++feasible_seen;
    WeightedBipartiteGraph graph = to_graph(instance);
    Forest forest = subforest_by_cycle_canceling(graph, *coupling);
    Coupling stripped = edge_weights_from_forest(forest);
    CHECK(coupling_is_valid(stripped, instance));
  }
  CHECK(feasible_seen > 15);
}

TEST_CASE("couple_forest end to end") {
  Instance instance = validate_instance(two_by_two_uniform());
  auto outcome = couple_forest(instance);
  REQUIRE(std::holds_alternative<Coupling>(outcome));
  const Coupling& coupling = std::get<Coupling>(outcome);
  CHECK(coupling_is_valid(coupling, instance));
  CHECK(coupling.support_size() <= 3);
  CHECK(coupling_support_is_forest(coupling));

  auto infeasible = couple_forest(validate_instance(half_stuck()));
  REQUIRE(std::holds_alternative<Certificate>(infeasible));
  CHECK(std::get<Certificate>(infeasible).violating_set ==
        std::vector<std::string>{"a2"});
}
