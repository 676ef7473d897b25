#ifndef COUPLINGS_MATCHING_HPP
#define COUPLINGS_MATCHING_HPP

#include <variant>
#include <vector>

#include "couplings/couple.hpp"
#include "couplings/graph.hpp"
#include "couplings/instance.hpp"

namespace couplings {

inline constexpr int kDefaultBlowUpCap = 5000;

/// Maximum-cardinality matching by augmenting paths; deterministic given
/// the vertex ordering. Weights on the graph are ignored.
Matching max_matching(const WeightedBipartiteGraph& graph);

// A violating subset of A-vertex indices, |U| > |N(U)| (+ k).
using MatchingOutcome = std::variant<Matching, std::vector<int>>;

/// Perfect matching when |U| <= |N(U)| holds for every U, otherwise the
/// violating subset read off the alternating-reachability set of the
/// unmatched A-vertices. Requires |A| = |B| (UnequalSides).
MatchingOutcome perfect_matching(const WeightedBipartiteGraph& graph);

/// Perfect matching built the constructive way: extract a subforest of the
/// unit-weighted graph, match a degree-1 vertex with its unique neighbor,
/// recurse on the graph with both removed. Throws ConditionViolated when
/// the marriage condition fails, UnequalSides when |A| != |B|.
Matching matching_from_forest(const WeightedBipartiteGraph& graph);

/// Deficiency-k matching: a matching of size >= n - k when
/// |U| <= |N(U)| + k for all U, otherwise a subset violating that bound.
/// Solved directly via max_matching and cross-checked against the
/// augmented graph with k universal vertices per side; the two paths must
/// agree on feasibility.
MatchingOutcome matching_with_deficiency(const WeightedBipartiteGraph& graph,
                                         int k);

/// The augmented-graph path on its own, exposed for cross-checking: adds k
/// universal vertices to each side, takes a perfect matching there and
/// intersects it with the original edges.
MatchingOutcome matching_with_deficiency_augmented(
    const WeightedBipartiteGraph& graph, int k);

/// Blow-up construction for an epsilon-coupling: replace every vertex x by
/// N*w(x) unit copies (N = lcm of all denominators, k = epsilon*N), match
/// the copies with deficiency k, trim to exactly N-k edges, pair the
/// leftover copies in sorted order, and aggregate copy-pair counts back to
/// masses. Throws EpsilonTooSmall when epsilon is below the minimal
/// deficiency and BlowUpTooLarge past the copy cap.
Coupling couple_with_deficiency_blowup(const Instance& instance,
                                       const Rational& epsilon,
                                       int cap = kDefaultBlowUpCap);

/// Scalable epsilon-coupling: route what fits on R by max flow, then
/// complete the missing mass off-relation (northwest-corner over sorted
/// labels). Returns the certificate when the minimal deficiency exceeds
/// epsilon.
CouplingOutcome couple_with_deficiency_flow(const Instance& instance,
                                            const Rational& epsilon);

}  // namespace couplings

#endif
