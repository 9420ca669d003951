#ifndef CATASTRO_SERIES_HPP
#define CATASTRO_SERIES_HPP

#include <functional>

namespace catastro::detail {

// Sum of S = sum_{j>=1} prod_{k=0}^{j-1} alpha_k for a factor sequence
// alpha_k in (0,1]. Convergence is geometric when alpha stays away from 1
// and Raabe-type (terms ~ j^{-c} with c = lim j(1-alpha_j)/alpha_j) when
// alpha_k -> 1. In the Raabe regime the summation runs to j_max and adds
// the tail correction b_J * J / (c - 1), whose bound is an estimate.
struct ProductSeriesSum {
  enum class Outcome { Converged, Divergent, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  double sum = 0.0;
  double bound = 0.0;
  bool heuristic = false;
  long terms = 0;
};

ProductSeriesSum sum_product_series(const std::function<double(long)>& alpha,
                                    double tol = 1e-10, long j_max = 2000000);

// log of prod_{k>=0} alpha_k with a divergence verdict (log -> -inf).
struct ProductResult {
  enum class Outcome { Converged, DivergesToZero, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  double log_value = 0.0;
  double log_bound = 0.0;  // bound on the neglected -log tail
  bool heuristic = false;
  long terms = 0;
};

ProductResult infinite_product(const std::function<double(long)>& alpha,
                               double tol = 1e-14, long k_max = 1000000);

}  // namespace catastro::detail

#endif
