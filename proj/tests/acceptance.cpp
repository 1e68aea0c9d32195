// Acceptance gate: one line per headline criterion, nonzero exit on any
// failure. Tolerances are pinned inside the individual checks.

#include <cstdio>
#include <cstdlib>

#include "telebell/verify.hpp"

int main(int argc, char **argv) {
  std::uint64_t seed = 1234;
  int trials = 200;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) trials = std::atoi(argv[2]);

  const auto results = telebell::verify::run_all(seed, trials);
  int failures = 0;
  int index = 0;
  for (const auto &r : results) {
    ++index;
    std::printf("[%s] %2d. %s — %s\n", r.passed ? "PASS" : "FAIL", index, r.name.c_str(),
                r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures;
}
