#ifndef COUPLINGS_COUPLE_HPP
#define COUPLINGS_COUPLE_HPP

#include <variant>

#include "couplings/graph.hpp"
#include "couplings/instance.hpp"

namespace couplings {

// Infeasibility is a value, not an error.
using CouplingOutcome = std::variant<Coupling, Certificate>;

inline constexpr int kDefaultInductiveCap = 24;

/// Couples via maximum flow: the A->B arc flows of a total-value max flow
/// are a coupling supported on R with exact marginals. On infeasible
/// instances returns the min-cut certificate instead.
CouplingOutcome couple_via_flow(const Instance& instance);

/// Cancels cycles in the coupling's support until it is acyclic: split the
/// cycle into the two alternating edge classes, move the minimum cycle mass
/// from the class holding the minimizing edge to the other, drop edges that
/// reach zero. Marginals are preserved at every step and the support
/// strictly shrinks, so at most |R| rounds run. Returns the final support
/// as a spanning forest of `graph`.
Forest subforest_by_cycle_canceling(const WeightedBipartiteGraph& graph,
                                    const Coupling& coupling);

/// The adjusted coupling after cycle canceling (same procedure; exposed so
/// callers can reuse the canceled masses rather than re-deriving them).
std::pair<Forest, Coupling> cancel_cycles(const WeightedBipartiteGraph& graph,
                                          const Coupling& coupling);

/// Inductive forest extraction, faithful to the split/augment case
/// analysis: split on a proper tight set when one exists, otherwise
/// shift weight off a minimum-weight vertex onto a synthetic twin (or peel
/// the vertex when the minimizing subset is all of A minus it) and recurse.
/// Tight sets are found by subset enumeration, so the instance size is
/// capped: throws SizeCapExceeded when |A|+|B| > cap, ConditionViolated
/// when the subforest condition fails on input.
Forest subforest_inductive(const WeightedBipartiteGraph& graph,
                           int cap = kDefaultInductiveCap);

/// Leaf stripping: repeatedly take a degree-1 vertex, assign its remaining
/// weight to its unique edge, decrement the neighbor, recurse. Degree-0
/// vertices must carry zero weight. Throws NotAForest on a cycle,
/// ConditionViolated when a stripped leaf outweighs its neighbor or a
/// stranded vertex retains weight.
Coupling edge_weights_from_forest(const Forest& forest);

/// End-to-end pipeline: flow feasibility -> coupling -> cycle canceling ->
/// leaf stripping. The returned coupling has forest support, so at most
/// |A|+|B|-1 nonzero entries.
CouplingOutcome couple_forest(const Instance& instance);

}  // namespace couplings

#endif
