#ifndef COUPLINGS_INSTANCE_HPP
#define COUPLINGS_INSTANCE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "couplings/rational.hpp"

namespace couplings {

// Two labeled finite sets with rational measures and a relation between
// them. Immutable after validation; all operations are pure functions.
struct Instance {
  std::vector<std::string> a_labels;
  std::vector<std::string> b_labels;
  std::map<std::string, Rational> p;        // measure on A; absent label = 0
  std::map<std::string, Rational> p_prime;  // measure on B
  std::set<std::pair<std::string, std::string>> relation;

  Rational mass_a(const std::string& label) const;
  Rational mass_b(const std::string& label) const;
  Rational total() const;  // equal on both sides once validated
};

/// Checks label uniqueness, nonnegative masses, equal totals and that every
/// relation pair references existing labels. Returns the instance unchanged
/// on success; throws ToolkitError (DuplicateLabel, NegativeMass,
/// UnbalancedTotals, DanglingRelationPair) otherwise.
Instance validate_instance(Instance raw);

/// Same checks plus total mass exactly 1. Entry point used by the
/// probabilistic operations.
Instance validate_probability_instance(Instance raw);

}  // namespace couplings

#endif
