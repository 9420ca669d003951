#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "catastro/exact.hpp"
#include "catastro/oracle.hpp"

using namespace catastro;

TEST_CASE("classical extinction time: frozen values") {
  // independent evaluations of (1/lambda)(prod_k (1 + lambda p^k) - 1)
  CHECK(classical_extinction_time(1.0, 0.5).value ==
        doctest::Approx(3.7684620580630126).epsilon(1e-12));
  CHECK(classical_extinction_time(2.0, 0.5).value ==
        doctest::Approx(6.6526930870941595).epsilon(1e-12));
  CHECK(classical_extinction_time(0.5, 0.5).value ==
        doctest::Approx(2.7684620580630126).epsilon(1e-12));
  CHECK(classical_extinction_time(1.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(classical_extinction_time(1.0, 0.5).abs_error < 1e-10);
  CHECK(classical_extinction_time(1.0, 0.99).is_finite());
  CHECK(classical_extinction_time(1.0, 1.0).is_undefined());
}

TEST_CASE("s_nu: closed form, geometric case, and partial-sum cross-check") {
  EvalResult power = s_nu(0.5, SurvivalLaw::power_function(1.0));
  CHECK(power.method == Method::ClosedForm);
  CHECK(power.value == doctest::Approx(-5.0 / 9.0).epsilon(1e-14));

  EvalResult geo = s_nu(0.5, SurvivalLaw::degenerate(0.0));
  CHECK(geo.method == Method::Series);
  CHECK(geo.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

  // uniform: terms are (n+1)(-lambda)^n - 1; partial sums must match the
  // closed form the engine returns
  double lambda = 0.5;
  double sum = 0.0;
  double pw = 1.0;
  for (int n = 1; n <= 200; ++n) {
    pw *= -lambda;
    sum += (n + 1) * pw;
  }
  CHECK(s_nu(lambda, SurvivalLaw::uniform()).value == doctest::Approx(sum).epsilon(1e-10));

  CHECK(s_nu(1.5, SurvivalLaw::degenerate(0.5)).is_undefined());
  CHECK_THROWS_AS(s_nu(0.5, SurvivalLaw::degenerate(1.0)), std::invalid_argument);
}

TEST_CASE("cat_random_expected: closed forms and trivial cases") {
  CHECK(cat_random_expected(3.0, SurvivalLaw::power_function(1.0)).value ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(cat_random_expected(1.0, SurvivalLaw::power_function(2.0)).value ==
        doctest::Approx(7.0).epsilon(1e-12));
  CHECK(cat_random_expected(0.7, SurvivalLaw::degenerate(0.0)).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cat_random_expected(0.5, SurvivalLaw::degenerate(0.5)).value ==
        doctest::Approx(classical_extinction_time(0.5, 0.5).value).epsilon(1e-9));
}

TEST_CASE("euler identity: series and oracle routes vs classical product") {
  for (double p : {0.2, 0.5, 0.8}) {
    SurvivalLaw law = SurvivalLaw::degenerate(p);
    for (double lambda : {0.3, 0.5, 0.9}) {
      CAPTURE(lambda);
      CAPTURE(p);
      EvalResult e = cat_random_expected(lambda, law);
      CHECK(e.method == Method::Series);
      CHECK(std::abs(e.value - classical_extinction_time(lambda, p).value) < 1e-9);
    }
    for (double lambda : {1.5, 3.0}) {
      CAPTURE(lambda);
      CAPTURE(p);
      EvalResult e = cat_random_expected(lambda, law);
      CHECK(e.method == Method::Oracle);
      CHECK(std::abs(e.value - classical_extinction_time(lambda, p).value) < 1e-5);
    }
  }
}

TEST_CASE("tau recovery: trivial case and oracle agreement") {
  CHECK(cat_random_tau_recovery(0.5, SurvivalLaw::degenerate(0.0), 7).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cat_random_tau_recovery(0.5, SurvivalLaw::degenerate(0.5), 1).value ==
        doctest::Approx(2.7684620580630126).epsilon(1e-9));

  EvalResult tau2 = cat_random_tau_recovery(0.5, SurvivalLaw::uniform(), 2);
  EvalResult tau1 = cat_random_tau_recovery(0.5, SurvivalLaw::uniform(), 1);
  CHECK(tau2.value > tau1.value);
  TruncationReport oracle = truncated_kolmogorov_tau(0.5, SurvivalLaw::uniform(), 2, 1e-9);
  CHECK(std::abs(tau2.value - oracle.value_at_N) < 1e-6);

  CHECK_THROWS_AS(cat_random_tau_recovery(1.5, SurvivalLaw::uniform(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(cat_random_tau_recovery(0.5, SurvivalLaw::uniform(), 21),
                  std::invalid_argument);
}

TEST_CASE("ind_random_survival: closed forms and degenerate regimes") {
  CHECK(ind_random_survival(2.0, SurvivalLaw::uniform()).value ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ind_random_survival(1.0, SurvivalLaw::degenerate(1.0)).value == doctest::Approx(1.0));
  CHECK(ind_random_survival(5.0, SurvivalLaw::degenerate(0.0)).value == doctest::Approx(0.0));
  CHECK(ind_random_survival(10.0, SurvivalLaw::degenerate(0.9)).value == doctest::Approx(0.0));

  // power-function closed form on a 5x5 grid
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    SurvivalLaw law = SurvivalLaw::power_function(a);
    for (double lambda : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      CAPTURE(a);
      CAPTURE(lambda);
      double want = std::max(0.0, 1.0 - 1.0 / (a * lambda));
      CHECK(std::abs(ind_random_survival(lambda, law).value - want) < 1e-8);
    }
  }
}

TEST_CASE("ind_random_survival: inner sum at (uniform, lambda=2) telescopes to 2") {
  // generic series route against the closed form through the full map
  EvalResult series = ind_random_survival_series(2.0, SurvivalLaw::uniform());
  // survival = (1+lambda) / (lambda (1 + sum)); sum = 2 <=> survival = 0.5
  double recovered_sum = (1.0 + 2.0) / (2.0 * series.value) - 1.0;
  CHECK(recovered_sum == doctest::Approx(2.0).epsilon(1e-8));

  EvalResult beta21 = ind_random_survival_series(1.0, SurvivalLaw::beta(2.0, 1.0));
  CHECK(beta21.value == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("ind_random_expected: reduction, divergence, and finite product") {
  CHECK(ind_random_expected(1.0, SurvivalLaw::degenerate(0.5)).value ==
        doctest::Approx(classical_extinction_time(1.0, 0.5).value).epsilon(1e-9));
  CHECK(ind_random_expected(2.0, SurvivalLaw::uniform()).is_infinite());
  CHECK(ind_random_expected(3.0, SurvivalLaw::degenerate(0.0)).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  EvalResult b23 = ind_random_expected(1.0, SurvivalLaw::beta(2.0, 3.0));
  CHECK(b23.is_finite());
  CHECK(b23.value > 1.0);

  // delta_p reduction across both lambda regimes
  for (double p : {0.2, 0.5, 0.8}) {
    for (double lambda : {0.3, 0.5, 0.9, 1.5, 3.0}) {
      CAPTURE(lambda);
      CAPTURE(p);
      CHECK(std::abs(ind_random_expected(lambda, SurvivalLaw::degenerate(p)).value -
                     classical_extinction_time(lambda, p).value) < 1e-9);
    }
  }
}

TEST_CASE("moment_sum_diverges per family") {
  using A = DivergenceVerdict::Answer;
  CHECK(moment_sum_diverges(SurvivalLaw::uniform()).answer == A::Diverges);
  CHECK(moment_sum_diverges(SurvivalLaw::degenerate(0.5)).answer == A::Converges);
  CHECK(moment_sum_diverges(SurvivalLaw::beta(1.0, 2.0)).answer == A::Converges);
  CHECK(moment_sum_diverges(SurvivalLaw::beta(2.0, 0.5)).answer == A::Diverges);
  CHECK(moment_sum_diverges(SurvivalLaw::truncated_exponential(2.0)).answer == A::Diverges);
  CHECK(moment_sum_diverges(SurvivalLaw::degenerate(1.0)).answer == A::Diverges);
}

TEST_CASE("survival criterion: verdicts, routes, critical rates") {
  using V = CriterionVerdict::Verdict;
  using R = CriterionVerdict::Route;

  SurvivalLaw te = SurvivalLaw::truncated_exponential(1.0);
  CriterionVerdict above = survival_criterion(2.0, te);
  CHECK(above.verdict == V::Survives);
  CHECK(above.route == R::DensityLimit);
  REQUIRE(above.critical_rate.has_value());
  CHECK(*above.critical_rate == doctest::Approx(std::expm1(1.0)).epsilon(1e-12));

  CriterionVerdict at = survival_criterion(std::expm1(1.0), te);
  CHECK(at.verdict == V::Extinct);
  CHECK(at.route == R::CriticalDifferentiable);

  CHECK(survival_criterion(100.0, SurvivalLaw::beta(2.0, 3.0)).verdict == V::Extinct);
  CHECK(survival_criterion(0.1, SurvivalLaw::beta(0.5, 0.5)).verdict == V::Survives);

  CriterionVerdict critical = survival_criterion(0.5, SurvivalLaw::power_function(2.0));
  CHECK(critical.verdict == V::Extinct);  // a*lambda = 1 exactly: critical case
  CHECK(critical.route == R::ClosedFormFamily);
}

TEST_CASE("criterion and formula agree on a grid") {
  using V = CriterionVerdict::Verdict;
  std::vector<SurvivalLaw> laws = {SurvivalLaw::uniform(), SurvivalLaw::beta(2.0, 1.0),
                                   SurvivalLaw::beta(2.0, 3.0),
                                   SurvivalLaw::truncated_exponential(1.0)};
  for (const SurvivalLaw& law : laws) {
    for (double lambda : {0.3, 0.8, 1.4, 2.1, 4.0}) {
      CAPTURE(law.label());
      CAPTURE(lambda);
      CriterionVerdict v = survival_criterion(lambda, law);
      EvalResult s = ind_random_survival(lambda, law);
      if (v.verdict == V::Survives) CHECK(s.value > 1e-6);
      if (v.verdict == V::Extinct) CHECK(s.value < 1e-6);
    }
  }
}

TEST_CASE("cat_random_expected is always >= 1") {
  std::vector<SurvivalLaw> laws = {SurvivalLaw::degenerate(0.0), SurvivalLaw::uniform(),
                                   SurvivalLaw::beta(2.0, 3.0),
                                   SurvivalLaw::truncated_exponential(1.0)};
  for (const SurvivalLaw& law : laws) {
    for (double lambda : {0.2, 0.7, 1.5, 3.0}) {
      CAPTURE(law.label());
      CAPTURE(lambda);
      CHECK(cat_random_expected(lambda, law).value >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("foster drift") {
  CHECK(foster_drift(1.0, SurvivalLaw::degenerate(0.5), 10) == doctest::Approx(-2.0));
  CHECK(foster_drift(1.0, SurvivalLaw::degenerate(0.5), 0) == doctest::Approx(0.5));
  CHECK(foster_drift(2.0, SurvivalLaw::degenerate(0.75), 8) == doctest::Approx(0.0));
}
