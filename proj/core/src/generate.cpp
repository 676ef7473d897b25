#include "couplings/generate.hpp"

#include <string>

namespace couplings {

namespace {

std::string label(const char* prefix, int i) {
  return std::string(prefix) + std::to_string(i + 1);
}

}  // namespace

Instance random_probability_instance(const GeneratorConfig& config,
                                     std::mt19937& rng) {
  std::uniform_int_distribution<int> mass_draw(0, config.denominator);
  std::uniform_int_distribution<int> pct(0, 99);

  Instance instance;
  std::vector<Rational> a_mass(config.num_a), b_mass(config.num_b);
  Rational total_a = 0, total_b = 0;
  for (int i = 0; i < config.num_a; ++i) {
    a_mass[i] = Rational(mass_draw(rng), config.denominator);
    total_a += a_mass[i];
  }
  for (int j = 0; j < config.num_b; ++j) {
    b_mass[j] = Rational(mass_draw(rng), config.denominator);
    total_b += b_mass[j];
  }
  // Rebalance on the last A-mass; bump both sides when that would go
  // negative or leave an empty measure.
  while (a_mass[config.num_a - 1] + total_b - total_a < 0 || total_b == 0) {
    b_mass[config.num_b - 1] += 1;
    total_b += 1;
  }
  a_mass[config.num_a - 1] += total_b - total_a;

  for (int i = 0; i < config.num_a; ++i) {
    instance.a_labels.push_back(label("a", i));
    instance.p[instance.a_labels.back()] = a_mass[i] / total_b;
  }
  for (int j = 0; j < config.num_b; ++j) {
    instance.b_labels.push_back(label("b", j));
    instance.p_prime[instance.b_labels.back()] = b_mass[j] / total_b;
  }
  for (int i = 0; i < config.num_a; ++i) {
    for (int j = 0; j < config.num_b; ++j) {
      if (pct(rng) < config.density_pct) {
        instance.relation.emplace(instance.a_labels[i], instance.b_labels[j]);
      }
    }
  }
  return validate_probability_instance(std::move(instance));
}

WeightedBipartiteGraph random_unit_bipartite_graph(int num_a, int num_b,
                                                   int density_pct,
                                                   std::mt19937& rng) {
  std::uniform_int_distribution<int> pct(0, 99);
  std::vector<std::string> a_labels, b_labels;
  for (int i = 0; i < num_a; ++i) a_labels.push_back("A:" + label("a", i));
  for (int j = 0; j < num_b; ++j) b_labels.push_back("B:" + label("b", j));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < num_a; ++i) {
    for (int j = 0; j < num_b; ++j) {
      if (pct(rng) < density_pct) edges.emplace_back(i, j);
    }
  }
  return make_graph(std::move(a_labels), std::move(b_labels),
                    std::vector<Rational>(num_a, 1),
                    std::vector<Rational>(num_b, 1), std::move(edges));
}

}  // namespace couplings
