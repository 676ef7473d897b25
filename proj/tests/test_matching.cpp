#include <doctest.h>

#include <random>

#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/generate.hpp"
#include "couplings/matching.hpp"

#include "helpers.hpp"

using namespace couplings;
using namespace couplings::testing;

namespace {

// Independent oracle: maximum matching size as n minus the largest defect
// |U| - |N(U)| over all subsets of A (König/Ore).
int matching_size_oracle(const WeightedBipartiteGraph& graph) {
  const int n = graph.num_a();
  int worst_defect = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::set<int> u;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) u.insert(i);
    }
    int defect = static_cast<int>(u.size()) -
                 static_cast<int>(neighborhood(graph, u).size());
    worst_defect = std::max(worst_defect, defect);
  }
  return n - worst_defect;
}

WeightedBipartiteGraph star_collision() {
  // a1, a2, a3 all adjacent only to b1; a1 also sees b2.
  Instance instance = make_instance(
      {{"a1", "1/3"}, {"a2", "1/3"}, {"a3", "1/3"}},
      {{"b1", "1/2"}, {"b2", "1/2"}, {"b3", "0"}},
      {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a3", "b1"}});
  return unit_graph(validate_instance(instance));
}

}  // namespace

TEST_CASE("max_matching on a graph with a forced collision") {
  WeightedBipartiteGraph graph = star_collision();
  Matching matching = max_matching(graph);
  CHECK(matching.size() == 2);
  CHECK(matching_is_valid(matching, graph));
}

TEST_CASE("max_matching size matches the defect formula") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedBipartiteGraph graph = random_unit_bipartite_graph(7, 7, 40, rng);
    Matching matching = max_matching(graph);
    CHECK(matching_is_valid(matching, graph));
    CHECK(matching.size() == matching_size_oracle(graph));
  }
}

TEST_CASE("perfect_matching requires equal sides") {
  std::mt19937 rng(73);
  WeightedBipartiteGraph graph = random_unit_bipartite_graph(4, 5, 60, rng);
  try {
    perfect_matching(graph);
    FAIL("expected UnequalSides");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::UnequalSides);
  }
}

TEST_CASE("perfect_matching finds a matching or a Hall violator") {
  std::mt19937 rng(79);
  int matched = 0, violated = 0;
  for (int trial = 0; trial < 300; ++trial) {
    WeightedBipartiteGraph graph = random_unit_bipartite_graph(6, 6, 45, rng);
    MatchingOutcome outcome = perfect_matching(graph);
    if (auto* matching = std::get_if<Matching>(&outcome)) {
      ++matched;
      CHECK(matching->size() == 6);
      CHECK(matching_is_valid(*matching, graph));
    } else {
      ++violated;
      const auto& u = std::get<std::vector<int>>(outcome);
      std::set<int> subset(u.begin(), u.end());
      CHECK(subset.size() > neighborhood(graph, subset).size());
    }
  }
  CHECK(matched > 20);
  CHECK(violated > 20);
}

TEST_CASE("matching_from_forest agrees with perfect_matching feasibility") {
  std::mt19937 rng(83);
  int matched = 0;
  for (int trial = 0; trial < 150; ++trial) {
    WeightedBipartiteGraph graph = random_unit_bipartite_graph(6, 6, 55, rng);
    bool feasible = std::holds_alternative<Matching>(perfect_matching(graph));
    if (feasible) {
      ++matched;
      Matching matching = matching_from_forest(graph);
      CHECK(matching.size() == 6);
      CHECK(matching_is_valid(matching, graph));
    } else {
      CHECK_THROWS_AS(matching_from_forest(graph), ToolkitError);
    }
  }
  CHECK(matched > 20);
}

TEST_CASE("matching_with_deficiency across every k") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 80; ++trial) {
    WeightedBipartiteGraph graph = random_unit_bipartite_graph(6, 6, 35, rng);
    int best = matching_size_oracle(graph);
    for (int k = 0; k <= 6; ++k) {
      MatchingOutcome outcome = matching_with_deficiency(graph, k);
      if (auto* matching = std::get_if<Matching>(&outcome)) {
        CHECK(best >= 6 - k);
        CHECK(matching->size() >= 6 - k);
        CHECK(matching_is_valid(*matching, graph));
      } else {
        CHECK(best < 6 - k);
        const auto& u = std::get<std::vector<int>>(outcome);
        std::set<int> subset(u.begin(), u.end());
        CHECK(static_cast<int>(subset.size()) >
              static_cast<int>(neighborhood(graph, subset).size()) + k);
      }
    }
  }
}

TEST_CASE("augmented-graph deficiency matching agrees with the direct test") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 80; ++trial) {
    WeightedBipartiteGraph graph = random_unit_bipartite_graph(5, 5, 35, rng);
    for (int k = 0; k <= 5; ++k) {
      MatchingOutcome direct = matching_with_deficiency(graph, k);
      MatchingOutcome augmented = matching_with_deficiency_augmented(graph, k);
      CHECK(std::holds_alternative<Matching>(direct) ==
            std::holds_alternative<Matching>(augmented));
      if (auto* matching = std::get_if<Matching>(&augmented)) {
        CHECK(matching->size() >= 5 - k);
        CHECK(matching_is_valid(*matching, graph));
      }
    }
  }
}

TEST_CASE("blow-up coupling on the half-stuck instance") {
  Instance instance = validate_instance(half_stuck());
  // epsilon = 1/2: N = 2, k = 1, one unit must route off-relation.
  Coupling coupling =
      couple_with_deficiency_blowup(instance, Rational(1, 2));
  CHECK(coupling.total() == 1);
  CHECK(coupling_is_valid(coupling, instance, /*require_support=*/false));
  CHECK(coupling.mass_on(instance.relation) >= Rational(1, 2));
}

TEST_CASE("blow-up rejects epsilon below the minimal deficiency") {
  Instance instance = validate_instance(half_stuck());
  try {
    couple_with_deficiency_blowup(instance, Rational(1, 4));
    FAIL("expected EpsilonTooSmall");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::EpsilonTooSmall);
  }
}

TEST_CASE("blow-up enforces the copy cap") {
  Instance instance = validate_instance(one_by_one());
  try {
    couple_with_deficiency_blowup(instance, Rational(1, 5000), 4);
    FAIL("expected BlowUpTooLarge");
  } catch (const ToolkitError& e) {
    CHECK(e.code() == ErrorCode::BlowUpTooLarge);
  }
}

TEST_CASE("flow-based epsilon-coupling puts exactly 1-eps* on the relation") {
  Instance instance = validate_instance(half_stuck());
  auto outcome = couple_with_deficiency_flow(instance, Rational(1, 2));
  REQUIRE(std::holds_alternative<Coupling>(outcome));
  const Coupling& coupling = std::get<Coupling>(outcome);
  CHECK(coupling_is_valid(coupling, instance, /*require_support=*/false));
  CHECK(coupling.mass_on(instance.relation) == Rational(1, 2));
}

TEST_CASE("flow-based epsilon-coupling returns the certificate when short") {
  Instance instance = validate_instance(half_stuck());
  auto outcome = couple_with_deficiency_flow(instance, Rational(1, 4));
  REQUIRE(std::holds_alternative<Certificate>(outcome));
  CHECK(std::get<Certificate>(outcome).violating_set ==
        std::vector<std::string>{"a2"});
}

TEST_CASE("both epsilon-coupling constructions meet the mass bound") {
  std::mt19937 rng(101);
  GeneratorConfig config;
  config.num_a = 5;
  config.num_b = 5;
  config.denominator = 8;
  config.density_pct = 30;
  int infeasible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = random_probability_instance(config, rng);
    Rational epsilon = minimal_deficiency(instance).epsilon;
    if (epsilon == 0) continue;
    ++infeasible_seen;

    auto flow_outcome = couple_with_deficiency_flow(instance, epsilon);
    REQUIRE(std::holds_alternative<Coupling>(flow_outcome));
    const Coupling& via_flow = std::get<Coupling>(flow_outcome);
    CHECK(coupling_is_valid(via_flow, instance, /*require_support=*/false));
    CHECK(via_flow.mass_on(instance.relation) == 1 - epsilon);

    Coupling via_blowup =
        couple_with_deficiency_blowup(instance, epsilon, 100000);
    CHECK(coupling_is_valid(via_blowup, instance, /*require_support=*/false));
    CHECK(via_blowup.mass_on(instance.relation) >= 1 - epsilon);
  }
  CHECK(infeasible_seen > 10);
}
