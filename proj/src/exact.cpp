#include "catastro/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "catastro/oracle.hpp"
#include "catastro/series.hpp"

namespace catastro {

namespace {

bool is_beta_family(const SurvivalLaw& law) {
  using K = SurvivalLaw::Kind;
  return law.kind() == K::Beta || law.kind() == K::PowerFunction || law.kind() == K::Uniform;
}

// Beta(a,1) / power-function exponent, when the law is in that subfamily.
std::optional<double> power_exponent(const SurvivalLaw& law) {
  using K = SurvivalLaw::Kind;
  if (law.kind() == K::PowerFunction) return law.a();
  if (law.kind() == K::Uniform) return 1.0;
  if (law.kind() == K::Beta && law.b() == 1.0) return law.a();
  return std::nullopt;
}

// Certified bound on sum_{j > K} E[X^j] for families with analytic tails.
// Returns nullopt when only a heuristic is available.
std::optional<double> moment_tail_bound(const SurvivalLaw& law, long K) {
  using Kd = SurvivalLaw::Kind;
  switch (law.kind()) {
    case Kd::Degenerate: {
      double p = law.p();
      if (p >= 1.0) return std::nullopt;
      return std::pow(p, double(K + 1)) / (1.0 - p);
    }
    case Kd::Beta: {
      // m_j <= m_K * ((K+1+a+b)/(j+1+a+b))^b, summable for b > 1
      double b = law.b();
      if (b <= 1.0) return std::nullopt;
      double mK = law.moment(K);
      double Kp = double(K) + 1.0 + law.a() + b;
      return mK * Kp / (b - 1.0);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

EvalResult classical_extinction_time(double lambda, double p) {
  if (!(lambda > 0.0)) throw std::invalid_argument("classical_extinction_time: lambda must be > 0");
  if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("classical_extinction_time: p must be in [0,1]");
  if (p == 1.0) return EvalResult::undefined("p = 1: formula domain is p in [0,1)");

  double prod = 1.0;
  double term = lambda;  // lambda * p^k
  long k = 0;
  while (term >= 1e-16) {
    prod *= 1.0 + term;
    term *= p;
    ++k;
    if (p == 0.0) break;
  }
  // remaining factors: log tail <= sum of remaining lambda p^k
  double tail = (p > 0.0 && p < 1.0) ? term / (1.0 - p) : 0.0;
  double value = (prod - 1.0) / lambda;
  double bound = prod * (std::expm1(tail)) / lambda + 1e-15 * value;
  return EvalResult::finite(value, bound, k, Method::Product);
}

EvalResult s_nu(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("s_nu: lambda must be > 0");
  if (law.is_point_mass_at_one())
    throw std::invalid_argument("s_nu: law concentrated at 1 is outside the model");

  if (auto a = power_exponent(law)) {
    double v = std::pow(1.0 + lambda, -(*a + 1.0)) - 1.0;
    return EvalResult::finite(v, 1e-15 * std::abs(v), 0, Method::ClosedForm);
  }
  // Degenerate laws deliberately share the generic series/oracle routes so
  // the Euler-identity checks against the classical product are independent.
  if (lambda > 0.9)
    return EvalResult::undefined("series regime is lambda <= 0.9; use the oracle route");

  // direct partial sums with the alternating-series bound
  double term = 1.0;
  double sum = 0.0;
  long n = 0;
  while (true) {
    ++n;
    double denom = 1.0 - law.moment(n);
    if (denom <= 0.0)
      throw std::invalid_argument("s_nu: moment sequence touches 1");
    term *= -lambda / denom;
    sum += term;
    double next = std::abs(term) * lambda / (1.0 - law.moment(n + 1));
    if (next < 1e-13 && next < std::abs(term)) {
      return EvalResult::finite(sum, next, n, Method::Series);
    }
    if (n > 200000)
      return EvalResult::undefined("alternating series failed to certify convergence");
  }
}

EvalResult cat_random_expected(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("cat_random_expected: lambda must be > 0");
  if (law.is_point_mass_at_one())
    throw std::invalid_argument("cat_random_expected: law concentrated at 1 is outside Theorem hypotheses");

  EvalResult S = s_nu(lambda, law);
  if (S.is_finite()) {
    double denom = 1.0 + S.value;
    double v = -S.value / (lambda * denom);
    double bound = S.abs_error / (lambda * denom * denom) + 1e-14 * std::abs(v);
    EvalResult out = EvalResult::finite(v, bound, S.terms_used, S.method);
    out.heuristic = S.heuristic;
    return out;
  }
  TruncationReport rep = truncated_kolmogorov_tau(lambda, law, 1, 1e-9);
  EvalResult out = EvalResult::finite(rep.value_at_N, rep.successive_delta, rep.N, Method::Oracle);
  out.heuristic = true;  // killed truncation certifies a lower bound only
  if (!rep.converged) out.note = "oracle did not converge at the truncation cap";
  return out;
}

EvalResult cat_random_tau_recovery(double lambda, const SurvivalLaw& law, int i) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("cat_random_tau_recovery: supported regime is 0 < lambda < 1");
  if (i < 1 || i > 20)
    throw std::invalid_argument("cat_random_tau_recovery: i must be in [1,20]");
  if (law.is_point_mass_at_one())
    throw std::invalid_argument("cat_random_tau_recovery: law concentrated at 1");

  EvalResult tau1 = cat_random_expected(lambda, law);
  if (!tau1.is_finite()) return tau1;

  const long double lam = lambda;
  const long double t1 = tau1.value;
  const long double drive = (1.0L + lam * t1) / lam;
  long double v = t1;  // v_1
  // tau_i = sum_{k=1}^{i} C(i,k) (-1)^{k-1} v_k
  long double acc = 0.0L;
  long double binom = 1.0L;  // C(i,k)
  for (int k = 1; k <= i; ++k) {
    binom *= static_cast<long double>(i - k + 1) / k;
    acc += binom * ((k % 2 == 1) ? v : -v);
    if (k < i) v = -(1.0L - static_cast<long double>(law.moment(k))) / lam * v + drive;
  }
  EvalResult out = EvalResult::finite(static_cast<double>(acc),
                                      tau1.abs_error * std::pow(2.0, i), i, Method::Series);
  out.heuristic = true;
  return out;
}

EvalResult ind_random_survival_series(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ind_random_survival: lambda must be > 0");
  auto alpha = [&](long k) { return 1.0 / (1.0 + lambda * law.moment(k + 1)); };
  detail::ProductSeriesSum s = detail::sum_product_series(alpha);
  using O = detail::ProductSeriesSum::Outcome;
  if (s.outcome == O::Divergent)
    return EvalResult::finite(0.0, 0.0, s.terms, Method::Series);
  if (s.outcome == O::Inconclusive)
    return EvalResult::undefined("survival series: partial sums inconclusive at the cap");
  double denom = lambda * (1.0 + s.sum);
  double v = (1.0 + lambda) / denom;
  double bound = (1.0 + lambda) * lambda * s.bound / (denom * denom) + 1e-14 * v;
  EvalResult out = EvalResult::finite(v, bound, s.terms, Method::Series);
  out.heuristic = s.heuristic;
  return out;
}

EvalResult ind_random_survival(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ind_random_survival: lambda must be > 0");
  if (law.is_point_mass_at_one())
    return EvalResult::finite(1.0, 0.0, 0, Method::ClosedForm);  // immortal individuals
  if (auto a = power_exponent(law)) {
    double v = (lambda * *a > 1.0) ? 1.0 - 1.0 / (*a * lambda) : 0.0;
    return EvalResult::finite(v, 1e-15, 0, Method::ClosedForm);
  }
  // survival requires an infinite expected catastrophe count
  DivergenceVerdict d = moment_sum_diverges(law);
  if (d.answer == DivergenceVerdict::Answer::Converges && d.analytic)
    return EvalResult::finite(0.0, 0.0, 0, Method::ClosedForm);
  CriterionVerdict verdict = survival_criterion(lambda, law);
  if (verdict.verdict == CriterionVerdict::Verdict::Extinct)
    return EvalResult::finite(0.0, 0.0, 0, Method::ClosedForm);
  return ind_random_survival_series(lambda, law);
}

EvalResult ind_random_expected(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ind_random_expected: lambda must be > 0");
  DivergenceVerdict d = moment_sum_diverges(law);
  if (d.answer == DivergenceVerdict::Answer::Diverges)
    return EvalResult::infinite(Method::Product);
  if (d.answer == DivergenceVerdict::Answer::Inconclusive)
    return EvalResult::undefined("moment-sum divergence undecided for this law");

  // prod_{k>=0}(1 + lambda E[X^{k+1}]), truncated with the family's
  // analytic moment tail: remaining log mass <= lambda * tail
  double log_acc = 0.0;
  long k = 0;
  double tail_log = 0.0;
  bool certified = false;
  const long k_cap = 2000000;
  while (k < k_cap) {
    double m = law.moment(k + 1);
    if (auto t = moment_tail_bound(law, k + 1); t && lambda * *t < 1e-14) {
      tail_log = lambda * *t;
      certified = true;
      break;
    }
    if (lambda * m < 1e-18) {  // heuristic stop for custom laws
      tail_log = lambda * m * 64.0;
      break;
    }
    log_acc += std::log1p(lambda * m);
    ++k;
  }
  double prod = std::exp(log_acc);
  double value = ((1.0 + lambda) * prod - 1.0) / lambda;
  double bound = (1.0 + lambda) * prod * std::expm1(tail_log) / lambda + 1e-13 * value;
  EvalResult out = EvalResult::finite(value, bound, k, Method::Product);
  out.heuristic = !certified;
  return out;
}

DivergenceVerdict moment_sum_diverges(const SurvivalLaw& law) {
  using K = SurvivalLaw::Kind;
  DivergenceVerdict out;
  switch (law.kind()) {
    case K::Degenerate:
      out.answer = law.p() < 1.0 ? DivergenceVerdict::Answer::Converges
                                 : DivergenceVerdict::Answer::Diverges;
      return out;
    case K::PowerFunction:
    case K::Uniform:
      out.answer = DivergenceVerdict::Answer::Diverges;  // moments ~ a/n
      return out;
    case K::Beta:
      out.answer = law.b() <= 1.0 ? DivergenceVerdict::Answer::Diverges
                                  : DivergenceVerdict::Answer::Converges;
      return out;
    case K::TruncatedExponential:
      out.answer = DivergenceVerdict::Answer::Diverges;  // bounded below by a harmonic series
      return out;
    case K::CustomMoments: {
      out.analytic = false;
      double sum = 0.0;
      double last_nm = 0.0;
      for (long n = 1; n <= 100000; ++n) {
        double m = law.moment(n);
        sum += m;
        last_nm = double(n) * m;
        if (m < 1e-14 && last_nm < 0.01) {
          out.answer = DivergenceVerdict::Answer::Converges;
          return out;
        }
      }
      if (last_nm > 0.5) {
        out.answer = DivergenceVerdict::Answer::Diverges;
        return out;
      }
      out.answer = DivergenceVerdict::Answer::Inconclusive;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

CriterionVerdict survival_criterion(double lambda, const SurvivalLaw& law) {
  if (!(lambda > 0.0)) throw std::invalid_argument("survival_criterion: lambda must be > 0");
  using V = CriterionVerdict::Verdict;
  using R = CriterionVerdict::Route;
  CriterionVerdict out;

  using K = SurvivalLaw::Kind;
  if (law.kind() == K::Degenerate) {
    out.route = R::MomentAsymptotics;  // n lambda p^{n+1} -> 0 for p < 1
    out.verdict = law.p() >= 1.0 ? V::Survives : V::Extinct;
    return out;
  }
  if (is_beta_family(law)) {
    out.route = R::ClosedFormFamily;
    double b = (law.kind() == K::Beta) ? law.b() : 1.0;
    if (b < 1.0) {
      out.verdict = V::Survives;
    } else if (b > 1.0) {
      out.verdict = V::Extinct;
    } else {
      double a = (law.kind() == K::Uniform) ? 1.0 : law.a();
      out.critical_rate = 1.0 / a;
      double gap = a * lambda - 1.0;
      if (std::abs(gap) <= 1e-9) {
        out.verdict = V::Extinct;  // critical case: h(1/a) = 0 by monotonicity
      } else {
        out.verdict = gap > 0.0 ? V::Survives : V::Extinct;
      }
    }
    return out;
  }

  DensityLeftLimit f1 = law.density_left_limit();
  if (f1.kind == DensityLeftLimit::Kind::Finite) {
    out.route = R::DensityLimit;
    if (f1.value > 0.0) out.critical_rate = 1.0 / f1.value;
    double gap = lambda * f1.value - 1.0;
    if (std::abs(gap) <= 1e-9) {
      if (f1.left_differentiable) {
        out.verdict = V::Extinct;
        out.route = R::CriticalDifferentiable;
      } else {
        out.verdict = V::Inconclusive;
      }
    } else {
      out.verdict = gap > 0.0 ? V::Survives : V::Extinct;
    }
    return out;
  }

  out.verdict = V::Inconclusive;
  out.route = R::MomentAsymptotics;
  return out;
}

double foster_drift(double lambda, const SurvivalLaw& law, long i) {
  if (i < 0) throw std::invalid_argument("foster_drift: i must be >= 0");
  double mu = law.moment(1);
  return (lambda + double(i) * (mu - 1.0)) / (lambda + 1.0);
}

}  // namespace catastro
