#ifndef COUPLINGS_SELFTEST_HPP
#define COUPLINGS_SELFTEST_HPP

#include <map>
#include <string>
#include <vector>

namespace couplings {

// Randomized cross-algorithm verification: every invariant that pairs an
// implementation with an independent oracle, run over seeded instances.
struct SelftestReport {
  int instances = 0;
  std::map<std::string, int> passed;  // per check name
  std::map<std::string, int> failed;
  std::vector<std::string> messages;  // one line per failure

  bool ok() const { return failed.empty(); }
  int total_passed() const;
  int total_failed() const;
};

/// Runs `count` instances of side size `size` from `seed`. Throws
/// SubsetCapExceeded when `size` is beyond the brute-force caps.
SelftestReport run_selftest(int size, int count, unsigned seed);

}  // namespace couplings

#endif
