#ifndef GASKETBVP_VERIFY_HPP
#define GASKETBVP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gasketbvp {

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<std::string> details;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int trials = 0;  // 0 = per-check default
};

/// Named check groups exposed by `verify --group`: ratios, energies,
/// dtn, glue, extension, green.
std::vector<std::string> verify_group_names();
CheckReport check_group(const std::string& group, const VerifyOptions& opts);

/// The eight desk-scale acceptance checks, in order.
std::vector<CheckReport> acceptance_suite(std::uint64_t seed);

}  // namespace gasketbvp

#endif
