#include "couplings/selftest.hpp"

#include <random>
#include <sstream>

#include "couplings/couple.hpp"
#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/generate.hpp"
#include "couplings/matching.hpp"

namespace couplings {

namespace {

struct Checker {
  SelftestReport& report;
  int instance_id;

  void operator()(const std::string& name, bool ok,
                  const std::string& detail = "") {
    if (ok) {
      ++report.passed[name];
    } else {
      ++report.failed[name];
      std::ostringstream msg;
      msg << name << " failed on instance " << instance_id;
      if (!detail.empty()) msg << ": " << detail;
      report.messages.push_back(msg.str());
    }
  }
};

// Support of a coupling as a weighted graph on the instance's vertex set,
// for checking the subforest condition by enumeration.
WeightedBipartiteGraph support_graph(const Instance& instance,
                                     const Coupling& coupling) {
  WeightedBipartiteGraph graph = to_graph(instance);
  std::map<std::string, int> a_index, b_index;
  for (int a = 0; a < graph.num_a(); ++a) a_index[graph.plain_a(a)] = a;
  for (int b = 0; b < graph.num_b(); ++b) b_index[graph.plain_b(b)] = b;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [pair, mass] : coupling.mass) {
    edges.emplace_back(a_index.at(pair.first), b_index.at(pair.second));
  }
  return make_graph(graph.a_labels, graph.b_labels, graph.a_weights,
                    graph.b_weights, std::move(edges));
}

void check_instance(const Instance& instance, Checker& check,
                    std::mt19937& rng) {
  WeightedBipartiteGraph graph = to_graph(instance);
  BruteforceVerdict brute = check_condition_bruteforce(graph);
  FlowVerdict flow = check_condition_flow(graph);

  check("flow_vs_bruteforce", flow.satisfied == brute.satisfied);
  if (!flow.satisfied) {
    check("certificate_soundness",
          certificate_is_valid(*flow.certificate, instance) &&
              flow.certificate->deficiency == brute.worst_value);
  }

  CouplingOutcome outcome = couple_via_flow(instance);
  check("strassen_equivalence",
        std::holds_alternative<Coupling>(outcome) == brute.satisfied);
  if (auto* coupling = std::get_if<Coupling>(&outcome)) {
    check("coupling_marginals", coupling_is_valid(*coupling, instance));
  }

  CouplingOutcome forest_outcome = couple_forest(instance);
  check("forest_pipeline_verdict",
        std::holds_alternative<Coupling>(forest_outcome) == brute.satisfied);
  if (auto* coupling = std::get_if<Coupling>(&forest_outcome)) {
    bool small_enough = coupling->support_size() <=
                        graph.num_a() + graph.num_b() - 1;
    check("forest_pipeline",
          coupling_is_valid(*coupling, instance) &&
              coupling_support_is_forest(*coupling) && small_enough);
    check("forest_condition",
          check_condition_bruteforce(support_graph(instance, *coupling))
              .satisfied);
  }

  if (brute.satisfied && graph.num_a() + graph.num_b() <= kDefaultInductiveCap) {
    Forest forest = subforest_inductive(graph);
    WeightedBipartiteGraph as_graph =
        make_graph(graph.a_labels, graph.b_labels, graph.a_weights,
                   graph.b_weights, forest.edges);
    check("inductive_forest",
          forest_is_valid(forest) &&
              check_condition_bruteforce(as_graph).satisfied);
    Coupling stripped = edge_weights_from_forest(forest);
    check("leaf_strip_marginals", coupling_is_valid(stripped, instance));
  }

  Deficiency deficiency = minimal_deficiency(instance);
  Rational brute_eps = brute.worst_value > 0 ? brute.worst_value : Rational(0);
  check("minimal_deficiency_oracle", deficiency.epsilon == brute_eps);

  CouplingOutcome eps_outcome =
      couple_with_deficiency_flow(instance, deficiency.epsilon);
  if (auto* coupling = std::get_if<Coupling>(&eps_outcome)) {
    check("eps_flow_marginals",
          coupling_is_valid(*coupling, instance, /*require_support=*/false));
    check("eps_flow_relation_mass",
          coupling->mass_on(instance.relation) ==
              Rational(1) - deficiency.epsilon);
  } else {
    check("eps_flow_marginals", false, "flow path refused epsilon*");
  }

  Integer blow_n = 1;
  for (const auto& [label, mass] : instance.p) {
    blow_n = lcm(blow_n, denominator(mass));
  }
  for (const auto& [label, mass] : instance.p_prime) {
    blow_n = lcm(blow_n, denominator(mass));
  }
  blow_n = lcm(blow_n, denominator(deficiency.epsilon));
  if (blow_n * Integer(instance.a_labels.size() + instance.b_labels.size()) <=
      kDefaultBlowUpCap) {
    Coupling blown =
        couple_with_deficiency_blowup(instance, deficiency.epsilon);
    check("blowup_marginals",
          coupling_is_valid(blown, instance, /*require_support=*/false));
    check("blowup_relation_mass",
          blown.mass_on(instance.relation) >=
              Rational(1) - deficiency.epsilon);
  }

  // Adding a relation pair never increases the minimal deficiency.
  {
    Instance larger = instance;
    std::uniform_int_distribution<size_t> pick_a(0,
                                                 larger.a_labels.size() - 1);
    std::uniform_int_distribution<size_t> pick_b(0,
                                                 larger.b_labels.size() - 1);
    larger.relation.emplace(larger.a_labels[pick_a(rng)],
                            larger.b_labels[pick_b(rng)]);
    check("deficiency_monotone",
          minimal_deficiency(larger).epsilon <= deficiency.epsilon);
  }
}

void check_unit_graph(const WeightedBipartiteGraph& graph, Checker& check) {
  const int n = graph.num_a();
  BruteforceVerdict brute = check_condition_bruteforce(graph);
  int worst_defect = 0;
  if (brute.worst_value > 0) {
    worst_defect = static_cast<int>(numerator(brute.worst_value));
  }

  Matching maximum = max_matching(graph);
  check("max_matching_defect", maximum.size() == n - worst_defect);

  MatchingOutcome perfect = perfect_matching(graph);
  check("hall_equivalence",
        std::holds_alternative<Matching>(perfect) == brute.satisfied);
  if (auto* violator = std::get_if<std::vector<int>>(&perfect)) {
    std::set<int> u(violator->begin(), violator->end());
    check("hall_violator",
          static_cast<int>(u.size()) >
              static_cast<int>(neighborhood(graph, u).size()));
  } else {
    check("perfect_matching_valid",
          matching_is_valid(std::get<Matching>(perfect), graph) &&
              std::get<Matching>(perfect).size() == n);
    Matching constructive = matching_from_forest(graph);
    check("matching_from_forest",
          matching_is_valid(constructive, graph) && constructive.size() == n);
  }

  for (int k = 0; k <= n; ++k) {
    MatchingOutcome outcome = matching_with_deficiency(graph, k);
    bool feasible = std::holds_alternative<Matching>(outcome);
    check("deficiency_matching_oracle", feasible == (worst_defect <= k));
    if (feasible) {
      const Matching& m = std::get<Matching>(outcome);
      check("deficiency_matching_size",
            matching_is_valid(m, graph) && m.size() >= n - k);
    } else {
      std::set<int> u;
      for (int a : std::get<std::vector<int>>(outcome)) u.insert(a);
      check("deficiency_matching_violator",
            static_cast<int>(u.size()) >
                static_cast<int>(neighborhood(graph, u).size()) + k);
    }
  }
}

}  // namespace

int SelftestReport::total_passed() const {
  int sum = 0;
  for (const auto& [name, count] : passed) sum += count;
  return sum;
}

int SelftestReport::total_failed() const {
  int sum = 0;
  for (const auto& [name, count] : failed) sum += count;
  return sum;
}

SelftestReport run_selftest(int size, int count, unsigned seed) {
  if (size < 1 || size > 12) {
    throw ToolkitError(ErrorCode::SubsetCapExceeded,
                       "selftest size must be between 1 and 12 to keep the "
                       "subset oracles tractable");
  }
  std::mt19937 rng(seed);
  SelftestReport report;
  report.instances = count;

  GeneratorConfig config;
  config.num_a = size;
  config.num_b = size;
  for (int i = 0; i < count; ++i) {
    Checker check{report, i};
    Instance instance = random_probability_instance(config, rng);
    check_instance(instance, check, rng);
    WeightedBipartiteGraph unit =
        random_unit_bipartite_graph(size, size, 50, rng);
    check_unit_graph(unit, check);
  }
  return report;
}

}  // namespace couplings
