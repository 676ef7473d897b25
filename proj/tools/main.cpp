// Command-line front end: parse instance files, dispatch to the solvers,
// emit machine-readable results and certificates.
//
// Exit codes: 0 = witness produced, 1 = certificate produced (or selftest
// failure), 2 = operational error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "couplings/couple.hpp"
#include "couplings/errors.hpp"
#include "couplings/feasibility.hpp"
#include "couplings/io.hpp"
#include "couplings/matching.hpp"
#include "couplings/selftest.hpp"

namespace {

using namespace couplings;

constexpr int kExitWitness = 0;
constexpr int kExitCertificate = 1;
constexpr int kExitError = 2;

void emit(const ResultDocument& document, const std::string& output) {
  if (output == "text") {
    std::cout << result_to_text(document);
  } else {
    std::cout << result_to_json(document);
  }
}

// Every result is revalidated against its instance before printing.
void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("internal recheck failed: ") + what);
}

Certificate certificate_from_subset(const Instance& instance,
                                    const std::vector<std::string>& subset) {
  Certificate cert;
  cert.violating_set = subset;
  std::set<std::string> u(subset.begin(), subset.end());
  cert.lhs = 0;
  for (const auto& label : u) cert.lhs += instance.mass_a(label);
  std::set<std::string> nbrs;
  for (const auto& [a, b] : instance.relation) {
    if (u.count(a)) nbrs.insert(b);
  }
  cert.rhs = 0;
  for (const auto& label : nbrs) cert.rhs += instance.mass_b(label);
  cert.deficiency = cert.lhs - cert.rhs;
  return cert;
}

int cmd_check(const std::string& input, const std::string& algorithm,
              const std::string& output) {
  Instance instance = load_instance(input);
  WeightedBipartiteGraph graph = to_graph(instance);

  ResultDocument document;
  document.stats.algorithm = algorithm;
  std::optional<Certificate> certificate;
  if (algorithm == "bruteforce") {
    BruteforceVerdict verdict = check_condition_bruteforce(graph);
    if (!verdict.satisfied) {
      std::vector<std::string> labels;
      for (int a : verdict.worst_subset) labels.push_back(graph.plain_a(a));
      certificate = certificate_from_subset(instance, labels);
    }
  } else {
    FlowVerdict verdict = check_condition_flow(graph);
    certificate = verdict.certificate;
  }

  if (certificate) {
    require(certificate_is_valid(*certificate, instance), "certificate");
    document.status = "infeasible";
    document.certificate = std::move(certificate);
    emit(document, output);
    return kExitCertificate;
  }
  document.status = "feasible";
  emit(document, output);
  return kExitWitness;
}

int cmd_couple(const std::string& input, bool forest,
               const std::optional<std::string>& epsilon_text,
               const std::string& algorithm, const std::string& output) {
  Instance instance =
      validate_probability_instance(load_instance(input));

  ResultDocument document;
  document.stats.algorithm = algorithm;

  CouplingOutcome outcome;
  bool off_relation_allowed = false;
  if (epsilon_text) {
    Rational epsilon = parse_rational(*epsilon_text);
    document.stats.epsilon_used = epsilon;
    off_relation_allowed = true;
    if (algorithm == "blowup") {
      outcome = couple_with_deficiency_blowup(instance, epsilon);
    } else {
      outcome = couple_with_deficiency_flow(instance, epsilon);
    }
  } else if (algorithm == "blowup") {
    outcome = couple_with_deficiency_blowup(instance, Rational(0));
  } else if (forest) {
    outcome = couple_forest(instance);
  } else {
    outcome = couple_via_flow(instance);
  }

  if (auto* certificate = std::get_if<Certificate>(&outcome)) {
    require(certificate_is_valid(*certificate, instance), "certificate");
    document.status = "infeasible";
    document.certificate = *certificate;
    emit(document, output);
    return kExitCertificate;
  }

  const Coupling& coupling = std::get<Coupling>(outcome);
  require(coupling_is_valid(coupling, instance, !off_relation_allowed),
          "coupling");
  document.status = "feasible";
  document.coupling = coupling;
  document.stats.support_size = coupling.support_size();
  document.stats.is_forest = coupling_support_is_forest(coupling);
  document.stats.relation_mass = coupling.mass_on(instance.relation);
  emit(document, output);
  return kExitWitness;
}

int cmd_match(const std::string& input, std::optional<int> k,
              const std::string& output) {
  Instance instance = load_instance(input);
  WeightedBipartiteGraph graph = unit_graph(instance);

  ResultDocument document;
  MatchingOutcome outcome =
      k ? matching_with_deficiency(graph, *k) : perfect_matching(graph);

  if (auto* violator = std::get_if<std::vector<int>>(&outcome)) {
    std::set<int> u(violator->begin(), violator->end());
    Certificate cert;
    for (int a : *violator) cert.violating_set.push_back(graph.plain_a(a));
    cert.lhs = static_cast<int>(u.size());
    cert.rhs = static_cast<int>(neighborhood(graph, u).size());
    cert.deficiency = cert.lhs - cert.rhs;
    document.status = "infeasible";
    document.certificate = std::move(cert);
    emit(document, output);
    return kExitCertificate;
  }

  const Matching& matching = std::get<Matching>(outcome);
  require(matching_is_valid(matching, graph), "matching");
  document.status = "feasible";
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : matching.edges) {
    edges.emplace_back(graph.plain_a(a), graph.plain_b(b));
  }
  document.matching = std::move(edges);
  emit(document, output);
  return kExitWitness;
}

int cmd_deficiency(const std::string& input, const std::string& output) {
  Instance instance =
      validate_probability_instance(load_instance(input));
  Deficiency deficiency = minimal_deficiency(instance);

  ResultDocument document;
  document.stats.epsilon_used = deficiency.epsilon;
  if (deficiency.epsilon == 0) {
    document.status = "feasible";
    emit(document, output);
    return kExitWitness;
  }
  require(certificate_is_valid(*deficiency.achiever, instance), "certificate");
  document.status = "infeasible";
  document.certificate = deficiency.achiever;
  emit(document, output);
  return kExitCertificate;
}

int cmd_selftest(int size, int count, unsigned seed) {
  SelftestReport report = run_selftest(size, count, seed);
  std::cout << "instances: " << report.instances << "\n";
  for (const auto& [name, passed] : report.passed) {
    auto it = report.failed.find(name);
    int failed = it == report.failed.end() ? 0 : it->second;
    std::cout << name << ": " << passed << " passed, " << failed
              << " failed\n";
  }
  for (const auto& [name, failed] : report.failed) {
    if (!report.passed.count(name)) {
      std::cout << name << ": 0 passed, " << failed << " failed\n";
    }
  }
  for (const auto& message : report.messages) {
    std::cout << "FAIL " << message << "\n";
  }
  std::cout << (report.ok() ? "result: PASS" : "result: FAIL") << "\n";
  return report.ok() ? kExitWitness : kExitCertificate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact couplings, matchings and subforests on finite relations"};
  app.require_subcommand(1);

  std::string input, output = "json";
  std::string check_algorithm = "flow", couple_algorithm = "flow";
  bool forest = false;
  std::optional<std::string> epsilon;
  std::optional<int> k;
  int size = 6, count = 100;
  unsigned seed = 42;

  auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input) {
      cmd->add_option("--input", input, "instance file")->required();
    }
    cmd->add_option("--output", output, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* check = app.add_subcommand("check", "decide the coupling condition");
  add_io(check);
  check->add_option("--algorithm", check_algorithm)
      ->check(CLI::IsMember({"flow", "bruteforce"}));

  CLI::App* couple = app.add_subcommand("couple", "construct a coupling");
  add_io(couple);
  couple->add_flag("--forest", forest, "forest-supported coupling");
  couple->add_option("--epsilon", epsilon, "allowed off-relation mass P/Q");
  couple->add_option("--algorithm", couple_algorithm)
      ->check(CLI::IsMember({"flow", "blowup"}));

  CLI::App* match = app.add_subcommand("match", "perfect or deficiency matching");
  add_io(match);
  match->add_option("--k", k, "allowed deficiency");

  CLI::App* deficiency =
      app.add_subcommand("deficiency", "minimal epsilon for an epsilon-coupling");
  add_io(deficiency);

  CLI::App* selftest =
      app.add_subcommand("selftest", "randomized cross-algorithm verification");
  add_io(selftest, /*needs_input=*/false);
  selftest->add_option("--size", size, "side size of generated instances");
  selftest->add_option("--count", count, "number of instances");
  selftest->add_option("--seed", seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(input, check_algorithm, output);
    if (couple->parsed()) {
      return cmd_couple(input, forest, epsilon, couple_algorithm, output);
    }
    if (match->parsed()) return cmd_match(input, k, output);
    if (deficiency->parsed()) return cmd_deficiency(input, output);
    if (selftest->parsed()) return cmd_selftest(size, count, seed);
  } catch (const ToolkitError& e) {
    ResultDocument document;
    document.status = "error";
    document.error_code = error_code_name(e.code());
    document.error_message = e.what();
    emit(document, output);
    return kExitError;
  } catch (const std::exception& e) {
    ResultDocument document;
    document.status = "error";
    document.error_message = e.what();
    emit(document, output);
    return kExitError;
  }
  return kExitError;
}
