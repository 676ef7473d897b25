#ifndef COUPLINGS_GENERATE_HPP
#define COUPLINGS_GENERATE_HPP

#include <random>

#include "couplings/graph.hpp"
#include "couplings/instance.hpp"

namespace couplings {

// Seeded random instances for self-tests and oracles. Masses are drawn as
// k/D for a fixed small denominator, relation pairs are included
// independently with the given density (percent), and the last A-mass is
// adjusted so the totals balance; both measures are then normalized to
// total 1.
struct GeneratorConfig {
  int num_a = 6;
  int num_b = 6;
  int denominator = 12;   // masses drawn as k/denominator
  int density_pct = 45;   // chance of including each relation pair
};

Instance random_probability_instance(const GeneratorConfig& config,
                                     std::mt19937& rng);

/// Unit-weight bipartite graph with independently included edges.
WeightedBipartiteGraph random_unit_bipartite_graph(int num_a, int num_b,
                                                   int density_pct,
                                                   std::mt19937& rng);

}  // namespace couplings

#endif
