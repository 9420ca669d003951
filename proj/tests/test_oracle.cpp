#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "catastro/exact.hpp"
#include "catastro/firework.hpp"
#include "catastro/oracle.hpp"

using namespace catastro;

TEST_CASE("brute force firework tail: known values") {
  RadiusLaw mix = RadiusLaw::finite_support({0.5, 0.25, 0.25});
  CHECK(brute_force_firework_tail(mix, 1) == doctest::Approx(1.0));
  CHECK(brute_force_firework_tail(mix, 3) == doctest::Approx(0.375).epsilon(1e-14));
  RadiusLaw coin = RadiusLaw::finite_support({0.5, 0.5});
  CHECK(brute_force_firework_tail(coin, 4) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(brute_force_firework_tail(coin, 40), std::invalid_argument);
}

TEST_CASE("brute force agrees with the renewal sequence") {
  std::vector<RadiusLaw> laws = {RadiusLaw::finite_support({0.5, 0.25, 0.25}),
                                 RadiusLaw::finite_support({0.5, 0.5}),
                                 RadiusLaw::finite_support({0.2, 0.3, 0.1, 0.4}),
                                 RadiusLaw::finite_support({0.0, 1.0})};
  for (const RadiusLaw& law : laws) {
    CAPTURE(law.label());
    RenewalData r = renewal_sequence(law, 8);
    for (int n = 1; n <= 8; ++n) {
      CHECK(std::abs(brute_force_firework_tail(law, n + 1) -
                     r.u[static_cast<std::size_t>(n)]) < 1e-12);
    }
  }
}

TEST_CASE("kolmogorov oracle: trivial and classical values") {
  // first catastrophe kills everyone: tau_i = 1 at any truncation
  TruncationReport zero = truncated_kolmogorov_tau(0.5, SurvivalLaw::degenerate(0.0), 1, 1e-10);
  CHECK(zero.value_at_N == doctest::Approx(1.0).epsilon(1e-12));

  TruncationReport classic = truncated_kolmogorov_tau(1.0, SurvivalLaw::degenerate(0.5), 1, 1e-8);
  CHECK(classic.converged);
  CHECK(std::abs(classic.value_at_N - classical_extinction_time(1.0, 0.5).value) < 1e-6);

  TruncationReport power = truncated_kolmogorov_tau(3.0, SurvivalLaw::power_function(1.0), 1, 1e-6);
  CHECK(std::abs(power.value_at_N - 5.0) < 1e-5);
}

TEST_CASE("killed truncation is monotone in N") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    CAPTURE(lambda);
    double prev = -1.0;
    for (long N : {64L, 128L, 256L, 512L}) {
      std::vector<double> tau = truncated_kolmogorov_solve(lambda, SurvivalLaw::uniform(), N);
      CHECK(tau[1] >= prev - 1e-12);
      prev = tau[1];
    }
  }
}

TEST_CASE("residual of the truncated system is small") {
  for (const SurvivalLaw& law :
       {SurvivalLaw::degenerate(0.5), SurvivalLaw::uniform(), SurvivalLaw::beta(2.0, 3.0)}) {
    CAPTURE(law.label());
    std::vector<double> tau = truncated_kolmogorov_solve(1.0, law, 256);
    CHECK(truncated_kolmogorov_residual(1.0, law, tau) < 1e-9);
  }
}

TEST_CASE("cross-oracle agreement with the recovery formula") {
  for (const SurvivalLaw& law : {SurvivalLaw::degenerate(0.5), SurvivalLaw::uniform()}) {
    for (int i : {1, 2, 5, 10}) {
      CAPTURE(law.label());
      CAPTURE(i);
      EvalResult rec = cat_random_tau_recovery(0.5, law, i);
      TruncationReport oracle = truncated_kolmogorov_tau(0.5, law, i, 1e-9);
      CHECK(std::abs(rec.value - oracle.value_at_N) < 1e-6);
    }
  }
}

TEST_CASE("oracle handles the generic coefficient path") {
  SurvivalLaw te = SurvivalLaw::truncated_exponential(1.0);
  TruncationReport rep = truncated_kolmogorov_tau(0.5, te, 1, 1e-7);
  EvalResult series = cat_random_expected(0.5, te);
  CHECK(series.method == Method::Series);
  CHECK(std::abs(rep.value_at_N - series.value) < 1e-6);
}
