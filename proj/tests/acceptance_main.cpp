#include <cstdio>

#include "malmquist/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& c : malmquist::run_acceptance()) {
    std::printf("%s  criterion %d  %s: %s\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.detail.c_str());
    failed += !c.passed;
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
