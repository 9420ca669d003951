#include "catastro/firework.hpp"

#include <cmath>
#include <stdexcept>

#include "catastro/series.hpp"

namespace catastro {

double effective_cdf(const RadiusLaw& base, double lambda, long k) {
  if (!(lambda > 0.0)) throw std::invalid_argument("effective_cdf: lambda must be > 0");
  return 1.0 / (1.0 + lambda * (1.0 - base.cdf(k)));
}

EvalResult firework_survival(const RadiusLaw& alpha) {
  auto factor = [&](long k) { return alpha.cdf(k); };
  detail::ProductSeriesSum s = detail::sum_product_series(factor);
  using O = detail::ProductSeriesSum::Outcome;
  if (s.outcome == O::Divergent)
    return EvalResult::finite(0.0, 0.0, s.terms, Method::Series);
  if (s.outcome == O::Inconclusive)
    return EvalResult::undefined("survival series inconclusive at the cap");
  double denom = 1.0 + s.sum;
  double v = 1.0 / denom;
  EvalResult out = EvalResult::finite(v, s.bound / (denom * denom) + 1e-15 * v,
                                      s.terms, Method::Series);
  out.heuristic = s.heuristic;
  return out;
}

EvalResult firework_expected_range(const RadiusLaw& alpha) {
  // bounded support: the product is finite and exact
  if (long K = alpha.support_bound(); K >= 0) {
    double log_acc = 0.0;
    for (long k = 0; k < K; ++k) {
      double a = alpha.cdf(k);
      if (a <= 0.0) return EvalResult::infinite(Method::Product, k + 1);
      log_acc += std::log(a);
    }
    return EvalResult::finite(std::exp(-log_acc), 1e-14 * std::exp(-log_acc), K, Method::Product);
  }
  auto factor = [&](long k) { return alpha.cdf(k); };
  detail::ProductResult p = detail::infinite_product(factor);
  using O = detail::ProductResult::Outcome;
  if (p.outcome == O::DivergesToZero)
    return EvalResult::infinite(Method::Product, p.terms);
  if (p.outcome == O::Inconclusive)
    return EvalResult::undefined("infinite product inconclusive at the cap");
  double v = std::exp(-p.log_value);
  EvalResult out = EvalResult::finite(v, v * std::expm1(p.log_bound) + 1e-14 * v,
                                      p.terms, Method::Product);
  out.heuristic = p.heuristic;
  return out;
}

double interarrival(const RadiusLaw& alpha, long k) {
  if (k < 1) throw std::invalid_argument("interarrival: k must be >= 1");
  double prod = 1.0;
  for (long i = 0; i <= k - 2; ++i) prod *= alpha.cdf(i);
  return (1.0 - alpha.cdf(k - 1)) * prod;
}

RenewalData renewal_sequence(const RadiusLaw& alpha, long n_max) {
  if (n_max < 0) throw std::invalid_argument("renewal_sequence: n_max must be >= 0");
  RenewalData out;
  out.f.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  out.u.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  out.u[0] = 1.0;
  double prod = 1.0;  // prod_{i=0}^{k-2} alpha_i
  for (long k = 1; k <= n_max; ++k) {
    double a = alpha.cdf(k - 1);
    out.f[static_cast<std::size_t>(k)] = (1.0 - a) * prod;
    prod *= a;
  }
  out.f_infinity = prod;
  for (long n = 1; n <= n_max; ++n) {
    double acc = 0.0;
    for (long k = 1; k <= n; ++k)
      acc += out.f[static_cast<std::size_t>(k)] * out.u[static_cast<std::size_t>(n - k)];
    out.u[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

double tail_probability(const RadiusLaw& alpha, long n) {
  if (n < 1) throw std::invalid_argument("tail_probability: n must be >= 1");
  RenewalData r = renewal_sequence(alpha, n - 1);
  return r.u[static_cast<std::size_t>(n - 1)];
}

double bridge_survival(double lambda, double p_firework) {
  if (!(lambda > 0.0)) throw std::invalid_argument("bridge_survival: lambda must be > 0");
  double v = (1.0 + lambda) * p_firework / lambda;
  if (v < 0.0 || v > 1.0 + 1e-9)
    throw std::invalid_argument("bridge_survival: result outside [0,1]; inputs do not match");
  return std::min(v, 1.0);
}

EvalResult bridge_expected(double lambda, const EvalResult& e_firework) {
  if (!(lambda > 0.0)) throw std::invalid_argument("bridge_expected: lambda must be > 0");
  if (e_firework.is_infinite()) return e_firework;
  if (!e_firework.is_finite()) return e_firework;
  if (e_firework.value < 1.0 - 1e-12)
    throw std::invalid_argument("bridge_expected: E(M_F) < 1 is inconsistent");
  double v = ((1.0 + lambda) * e_firework.value - 1.0) / lambda;
  EvalResult out = EvalResult::finite(v, (1.0 + lambda) * e_firework.abs_error / lambda,
                                      e_firework.terms_used, e_firework.method);
  out.heuristic = e_firework.heuristic;
  return out;
}

}  // namespace catastro
