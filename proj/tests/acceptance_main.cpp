// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Optional arguments select criteria by number.
#include <cstdlib>
#include <iostream>

#include "gdalg/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& r : gdalg::acceptance::run(which)) {
    std::cout << gdalg::acceptance::format(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << failed << " failing)" << std::endl;
  return failed ? 1 : 0;
}
