#ifndef CATASTRO_VERIFY_HPP
#define CATASTRO_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace catastro {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: classical, catrandom, euler, ind, renewal, bridge, criteria,
// monotonicity, determinism, all. Unknown suite -> std::invalid_argument.
std::vector<CheckResult> run_verification_suite(const std::string& suite,
                                                long replicas = 100000,
                                                std::uint64_t seed = 20240901);

}  // namespace catastro

#endif
