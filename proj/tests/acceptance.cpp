// One line per acceptance criterion; exits non-zero if any criterion or the total time limit fails.

#include <chrono>
#include <cstdio>

#include "ellgen/selfcheck.hpp"

int main() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (int id = 1; id <= 10; ++id) {
    const ellgen::CriterionResult r = ellgen::run_criterion(id);
    ok = ok && r.passed;
    std::printf("%s criterion %2d  %-34s %8.3f s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    if (r.limit > 0) std::printf(" (limit %.0f s)", r.limit);
    std::printf("  %s\n", r.detail.c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = total <= ellgen::kSelfcheckLimit;
  std::printf("%s total runtime %.3f s (limit %.0f s)\n", in_time ? "PASS" : "FAIL", total, ellgen::kSelfcheckLimit);
  return ok && in_time ? 0 : 1;
}
