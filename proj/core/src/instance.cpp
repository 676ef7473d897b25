#include "couplings/instance.hpp"

#include <algorithm>
#include <unordered_set>

#include "couplings/errors.hpp"

namespace couplings {

namespace {

Rational lookup(const std::map<std::string, Rational>& masses,
                const std::string& label) {
  auto it = masses.find(label);
  return it == masses.end() ? Rational(0) : it->second;
}

void check_side(const std::vector<std::string>& labels,
                const std::map<std::string, Rational>& masses,
                const char* side) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw ToolkitError(ErrorCode::DuplicateLabel,
                         std::string(side) + " label \"" + label +
                             "\" appears more than once");
    }
  }
  for (const auto& [label, mass] : masses) {
    if (!seen.count(label)) {
      throw ToolkitError(ErrorCode::DanglingRelationPair,
                         "mass assigned to unknown " + std::string(side) +
                             " label \"" + label + "\"");
    }
    if (mass < 0) {
      throw ToolkitError(ErrorCode::NegativeMass,
                         "negative mass " + format_rational(mass) +
                             " on label \"" + label + "\"");
    }
  }
}

}  // namespace

Rational Instance::mass_a(const std::string& label) const {
  return lookup(p, label);
}

Rational Instance::mass_b(const std::string& label) const {
  return lookup(p_prime, label);
}

Rational Instance::total() const {
  Rational sum = 0;
  for (const auto& [label, mass] : p) sum += mass;
  return sum;
}

Instance validate_instance(Instance raw) {
  check_side(raw.a_labels, raw.p, "A");
  check_side(raw.b_labels, raw.p_prime, "B");

  Rational total_a = 0, total_b = 0;
  for (const auto& [label, mass] : raw.p) total_a += mass;
  for (const auto& [label, mass] : raw.p_prime) total_b += mass;
  if (total_a != total_b) {
    throw ToolkitError(ErrorCode::UnbalancedTotals,
                       "P totals " + format_rational(total_a) +
                           " but P' totals " + format_rational(total_b));
  }

  std::unordered_set<std::string> a_set(raw.a_labels.begin(),
                                        raw.a_labels.end());
  std::unordered_set<std::string> b_set(raw.b_labels.begin(),
                                        raw.b_labels.end());
  for (const auto& [a, b] : raw.relation) {
    if (!a_set.count(a)) {
      throw ToolkitError(ErrorCode::DanglingRelationPair,
                         "relation references unknown A label \"" + a + "\"");
    }
    if (!b_set.count(b)) {
      throw ToolkitError(ErrorCode::DanglingRelationPair,
                         "relation references unknown B label \"" + b + "\"");
    }
  }
  return raw;
}

Instance validate_probability_instance(Instance raw) {
  Instance instance = validate_instance(std::move(raw));
  if (instance.total() != 1) {
    throw ToolkitError(ErrorCode::UnbalancedTotals,
                       "probability instance must total 1, got " +
                           format_rational(instance.total()));
  }
  return instance;
}

}  // namespace couplings
