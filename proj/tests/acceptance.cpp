// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion maps to one verification suite.

#include <cstdio>
#include <string>
#include <vector>

#include "catastro/verify.hpp"

int main() {
  struct Criterion {
    const char* title;
    const char* suite;
  };
  const std::vector<Criterion> criteria = {
      {"classical consistency (product, oracle, Monte Carlo, Wald)", "classical"},
      {"catastrophe-random closed forms (uniform, power)", "catrandom"},
      {"Euler-identity suite (series and oracle routes)", "euler"},
      {"individual-random survival (closed form vs generic series)", "ind"},
      {"renewal sequence vs brute-force enumeration", "renewal"},
      {"bridge identity end-to-end", "bridge"},
      {"survival criteria suite (critical rates, verdicts)", "criteria"},
      {"survival monotonicity in the immigration rate", "monotonicity"},
      {"determinism across worker counts", "determinism"},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& crit : criteria) {
    ++index;
    bool pass = true;
    std::string why;
    try {
      for (const catastro::CheckResult& r : catastro::run_verification_suite(crit.suite)) {
        if (!r.pass) {
          pass = false;
          why += (why.empty() ? "" : "; ") + r.name + ": " + r.detail;
        }
      }
    } catch (const std::exception& e) {
      pass = false;
      why = e.what();
    }
    std::printf("criterion %d: %s -- %s\n", index, pass ? "PASS" : "FAIL", crit.title);
    if (!pass) {
      std::printf("  %s\n", why.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
