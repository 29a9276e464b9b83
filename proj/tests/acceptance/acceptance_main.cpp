// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "dwork/acceptance.hpp"

int main(int argc, char** argv) {
  dwork::AcceptanceOptions opt;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--threads") == 0) opt.threads = static_cast<unsigned>(std::atoi(argv[++i]));
  }
  std::printf("acceptance seed %llu, %u threads\n", static_cast<unsigned long long>(opt.seed), opt.threads);
  int failed = 0;
  dwork::run_acceptance(opt, [&](const dwork::CriterionResult& r) {
    std::printf("%s criterion %d: %s (%.2f s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    if (r.limit_seconds > 0) std::printf(", limit %.0f s", r.limit_seconds);
    std::printf(")\n    %s\n", r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d of %d criteria passed\n", dwork::kCriterionCount - failed, dwork::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
