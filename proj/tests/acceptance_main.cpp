// Runs the full verification suite and prints one line per criterion.
#include <cstdio>

#include "hypmag/verify.hpp"

int main() {
  int failures = 0, total = 0;
  for (int id = 1; id <= 10; ++id) {
    const auto results = hypmag::verify::run_all({id});
    for (const auto& r : results) {
      std::printf("[%s] criterion %2d: %s (%s; %.2f s)\n",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.c_str(), r.seconds);
      std::fflush(stdout);
      ++total;
      if (!r.passed) ++failures;
    }
  }
  std::printf("%d/%d criteria passed\n", total - failures, total);
  return failures == 0 ? 0 : 1;
}
