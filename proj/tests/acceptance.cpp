#include <cstdio>
#include <cstdlib>
#include <string>

#include "homotor/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  auto criteria = homotor::selftest::all_criteria();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto c = homotor::selftest::run(criteria[i], static_cast<int>(i + 1), seed);
    std::printf("[%s] %d. %s (%.2f s, limit %.0f s): %s\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), c.seconds,
                c.limit_seconds, c.detail.c_str());
    std::fflush(stdout);
    if (!c.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
