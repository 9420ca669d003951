#ifndef CATASTRO_FIREWORK_HPP
#define CATASTRO_FIREWORK_HPP

#include <vector>

#include "catastro/eval_result.hpp"
#include "catastro/radius_law.hpp"

namespace catastro {

// CDF of the per-site maximum radius when each site holds a
// Geometric(1/(1+lambda)) number of individuals with base-law radii:
// alpha_k = 1 / (1 + lambda (1 - base_cdf(k))).
double effective_cdf(const RadiusLaw& base, double lambda, long k);

// P(A_F) = (1 + sum_{j>=1} prod_{k<j} alpha_k)^{-1}
EvalResult firework_survival(const RadiusLaw& alpha);

// E(M_F) = (prod_{k>=0} alpha_k)^{-1}, with 1/0 = +infinity
EvalResult firework_expected_range(const RadiusLaw& alpha);

// inter-arrival mass f_k = (1 - alpha_{k-1}) prod_{i=0}^{k-2} alpha_i, k >= 1
double interarrival(const RadiusLaw& alpha, long k);

struct RenewalData {
  std::vector<double> f;  // f[k] = f_k for k = 1..n_max (f[0] unused, = 0)
  std::vector<double> u;  // u[n] for n = 0..n_max; u[0] = 1
  double f_infinity = 0;  // defect mass at truncation: prod_{i<n_max} alpha_i
};

// u_0 = 1, u_n = sum_{k=1}^{n} f_k u_{n-k}; P(M_F >= n+1) = u_n
RenewalData renewal_sequence(const RadiusLaw& alpha, long n_max);

// P(M_F >= n) = u_{n-1}
double tail_probability(const RadiusLaw& alpha, long n);

// P(A_C) = (1 + lambda) P(A_F) / lambda, for the matching effective law
double bridge_survival(double lambda, double p_firework);

// E(M_C) = ((1 + lambda) E(M_F) - 1) / lambda
EvalResult bridge_expected(double lambda, const EvalResult& e_firework);

}  // namespace catastro

#endif
