#ifndef COUPLINGS_FEASIBILITY_HPP
#define COUPLINGS_FEASIBILITY_HPP

#include <optional>
#include <vector>

#include "couplings/graph.hpp"
#include "couplings/instance.hpp"
#include "couplings/rational.hpp"

namespace couplings {

inline constexpr int kDefaultSubsetCap = 20;

struct BruteforceVerdict {
  bool satisfied = false;
  std::vector<int> worst_subset;  // A-vertex indices, ascending
  Rational worst_value;           // w(U) - w(N(U)) at the worst subset
};

/// Enumerates all 2^|A| subsets of A and checks w(U) <= w(N(U)). Reports
/// the subset maximizing w(U) - w(N(U)); ties are broken by the
/// lexicographically smallest index list. Throws SubsetCapExceeded when
/// |A| > cap.
BruteforceVerdict check_condition_bruteforce(const WeightedBipartiteGraph& graph,
                                             int cap = kDefaultSubsetCap);

struct FlowVerdict {
  bool satisfied = false;
  std::optional<Certificate> certificate;  // present iff not satisfied
};

/// Flow-based check: the condition holds iff the max-flow value of the
/// auxiliary network equals w(A). Requires w(A) = w(B); throws
/// UnbalancedTotals otherwise.
FlowVerdict check_condition_flow(const WeightedBipartiteGraph& graph);

struct Deficiency {
  Rational epsilon;                     // max(0, max_U P(U) - P'(N(U)))
  std::optional<Certificate> achiever;  // present iff epsilon > 0
};

/// The least epsilon for which P(U) <= P'(N_R(U)) + epsilon holds for all
/// U, computed as w(A) minus the max-flow value.
Deficiency minimal_deficiency(const Instance& instance);

}  // namespace couplings

#endif
