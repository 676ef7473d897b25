// Golden-file tests for the CLI: every corpus case must reproduce its
// expected stdout byte for byte and exit with the recorded code.

#include <cstdio>
#include <string>

#include "cli_harness.hpp"

using namespace couplings::testing;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what, const std::string& detail = "") {
  std::printf("%s: %s\n", what.c_str(), ok ? "ok" : "FAIL");
  if (!ok) {
    ++failures;
    if (!detail.empty()) std::printf("%s", detail.c_str());
  }
}

}  // namespace

int main() {
  auto cases = load_corpus(CORPUS_DIR);
  expect(cases.size() >= 12, "corpus has at least 12 cases");

  for (const auto& c : cases) {
    RunResult result = run_corpus_case(CLI_BINARY, CORPUS_DIR, c);
    expect(result.exit_code == c.expected_exit, c.name + " exit code",
           "  got " + std::to_string(result.exit_code) + ", want " +
               std::to_string(c.expected_exit) + "\n");
    expect(result.output == c.expected_output, c.name + " output bytes",
           "--- got ---\n" + result.output + "--- want ---\n" +
               c.expected_output);
  }

  // Behavior outside the corpus: operational errors and the selftest.
  RunResult missing = run_command(std::string("'") + CLI_BINARY +
                                  "' check --input /nonexistent.json");
  expect(missing.exit_code == 2, "missing input file exits 2");

  RunResult no_sub = run_command(std::string("'") + CLI_BINARY + "'");
  expect(no_sub.exit_code == 2, "missing subcommand exits 2");

  RunResult selftest = run_command(std::string("'") + CLI_BINARY +
                                   "' selftest --size 4 --count 20 --seed 7");
  expect(selftest.exit_code == 0, "selftest passes", selftest.output);
  expect(selftest.output.find("result: PASS") != std::string::npos,
         "selftest reports PASS");

  return failures == 0 ? 0 : 1;
}
