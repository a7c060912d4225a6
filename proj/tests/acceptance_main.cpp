// Runs the thirteen acceptance checks and prints one PASS/FAIL line each.
// Exit code 0 iff everything passed; timings go to stderr.

#include <cstdio>

#include "sml/experiments.hpp"

int main() {
  sml::ExperimentOptions opts;
  auto results = sml::run_all(opts);
  std::fputs(sml::format_results(results).c_str(), stdout);
  for (const auto& r : results)
    std::fprintf(stderr, "# criterion %d %s: %.3fs\n", r.id, r.name.c_str(), r.seconds);
  return sml::all_pass(results) ? 0 : 1;
}
