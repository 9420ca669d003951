#ifndef CATASTRO_ORACLE_HPP
#define CATASTRO_ORACLE_HPP

#include <vector>

#include "catastro/radius_law.hpp"
#include "catastro/survival_law.hpp"

namespace catastro {

struct TruncationReport {
  double value_at_N = 0.0;
  long N = 0;
  bool converged = false;
  double successive_delta = 0.0;
};

// Exact P(M_F >= n) for a finite-support radius law by enumerating all
// radius assignments of sites 0..n-2. Budget: |support|^(n-1) <= 1e7.
double brute_force_firework_tail(const RadiusLaw& support_law, int n);

// Minimal non-negative solution of the backward Kolmogorov system for the
// expected catastrophe count tau_i of the catastrophe-random model,
// approached monotonically from below by killed truncations (tau_{N+1}=0).
TruncationReport truncated_kolmogorov_tau(double lambda, const SurvivalLaw& law,
                                          int i, double tol);

// tau_1..tau_N of the killed truncation at a fixed level N (test hook for
// residual checks).
std::vector<double> truncated_kolmogorov_solve(double lambda, const SurvivalLaw& law, long N);

// max-norm residual of the truncated system at a candidate solution
double truncated_kolmogorov_residual(double lambda, const SurvivalLaw& law,
                                     const std::vector<double>& tau);

}  // namespace catastro

#endif
