#ifndef CATASTRO_EXACT_HPP
#define CATASTRO_EXACT_HPP

#include <optional>

#include "catastro/eval_result.hpp"
#include "catastro/survival_law.hpp"

namespace catastro {

struct CriterionVerdict {
  enum class Verdict { Survives, Extinct, Inconclusive };
  enum class Route { MomentAsymptotics, DensityLimit, CriticalDifferentiable, ClosedFormFamily };
  Verdict verdict = Verdict::Inconclusive;
  Route route = Route::MomentAsymptotics;
  std::optional<double> critical_rate;
};

struct DivergenceVerdict {
  enum class Answer { Diverges, Converges, Inconclusive };
  Answer answer = Answer::Inconclusive;
  bool analytic = true;  // false when decided by numeric partial sums
};

// Classical IPBC: E(T) = (1/lambda) (prod_{k>=0} (1 + lambda p^k) - 1).
EvalResult classical_extinction_time(double lambda, double p);

// Alternating series S_nu(lambda) = sum (-lambda)^n / prod_{j<=n}(1 - E[X^j]),
// closed forms for the power-function/Beta(a,1) and degenerate families.
// For lambda > 0.9 without a closed form the series diverges and the
// result is Undefined; callers fall back to the Kolmogorov oracle.
EvalResult s_nu(double lambda, const SurvivalLaw& law);

// Catastrophe-random model: E(M) = -(1/lambda) S/(1+S); oracle fallback.
EvalResult cat_random_expected(double lambda, const SurvivalLaw& law);

// tau_i recovered from the v_k recurrence (series regime, 0 < lambda < 1).
EvalResult cat_random_tau_recovery(double lambda, const SurvivalLaw& law, int i);

// Individual-random model survival probability.
EvalResult ind_random_survival(double lambda, const SurvivalLaw& law);
// The generic partial-sum route, bypassing family closed forms (used to
// cross-check the 2F1 closed form).
EvalResult ind_random_survival_series(double lambda, const SurvivalLaw& law);

// Individual-random model expected catastrophe count.
EvalResult ind_random_expected(double lambda, const SurvivalLaw& law);

// Does sum_n E[X^{n+1}] diverge?  (Equivalent to E(M_ind) = infinity.)
DivergenceVerdict moment_sum_diverges(const SurvivalLaw& law);

// Survival/extinction verdict for the individual-random model.
CriterionVerdict survival_criterion(double lambda, const SurvivalLaw& law);

// One-step drift of the embedded chain at population i.
double foster_drift(double lambda, const SurvivalLaw& law, long i);

}  // namespace catastro

#endif
