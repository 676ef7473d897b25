#ifndef COUPLINGS_TESTS_HELPERS_HPP
#define COUPLINGS_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "couplings/instance.hpp"
#include "couplings/rational.hpp"

namespace couplings::testing {

inline Rational rat(const std::string& text) { return parse_rational(text); }

// Compact instance builder: masses as strings, relation as "a:b" pairs.
inline Instance make_instance(
    const std::vector<std::pair<std::string, std::string>>& a,
    const std::vector<std::pair<std::string, std::string>>& b,
    const std::vector<std::pair<std::string, std::string>>& relation) {
  Instance instance;
  for (const auto& [label, mass] : a) {
    instance.a_labels.push_back(label);
    instance.p[label] = rat(mass);
  }
  for (const auto& [label, mass] : b) {
    instance.b_labels.push_back(label);
    instance.p_prime[label] = rat(mass);
  }
  for (const auto& [x, y] : relation) instance.relation.emplace(x, y);
  return instance;
}

// 1x1 instance: the minimal feasible case.
inline Instance one_by_one() {
  return make_instance({{"a", "1"}}, {{"b", "1"}}, {{"a", "b"}});
}

// P = (1/2, 1/2), P' = (1, 0), R = {(a1,b1), (a2,b2)}: a2's mass cannot
// route, minimal deficiency 1/2 with violator {a2}.
inline Instance half_stuck() {
  return make_instance({{"a1", "1/2"}, {"a2", "1/2"}},
                       {{"b1", "1"}, {"b2", "0"}},
                       {{"a1", "b1"}, {"a2", "b2"}});
}

// 2x2 complete with uniform masses.
inline Instance two_by_two_uniform() {
  return make_instance(
      {{"a1", "1/2"}, {"a2", "1/2"}}, {{"b1", "1/2"}, {"b2", "1/2"}},
      {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}});
}

}  // namespace couplings::testing

#endif
