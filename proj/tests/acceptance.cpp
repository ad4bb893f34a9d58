// Desk-scale acceptance run: one line per criterion, exit 0 iff all pass.
#include <cstdio>
#include <cstdlib>

#include "gasketbvp/verify.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  auto reports = gasketbvp::acceptance_suite(seed);
  bool all = true;
  int i = 0;
  for (const auto& r : reports) {
    std::printf("criterion %d (%s): %s\n", ++i, r.name.c_str(), r.passed ? "pass" : "FAIL");
    if (!r.passed)
      for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
