#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "catastro/survival_law.hpp"

using namespace catastro;

namespace {

double binom_coeff(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c *= double(n - j + 1) / j;
  return c;
}

}  // namespace

TEST_CASE("moments: closed-form spot values") {
  CHECK(SurvivalLaw::degenerate(0.5).moment(3) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(SurvivalLaw::power_function(1.0).moment(2) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(SurvivalLaw::beta(2.0, 3.0).moment(2) == doctest::Approx(0.2).epsilon(1e-12));
  // trunc-exp first moment against an independently computed value of
  // int_0^1 x e^{-x} dx / (1 - e^{-1})
  CHECK(SurvivalLaw::truncated_exponential(1.0).moment(1) ==
        doctest::Approx(0.4180232931306735).epsilon(1e-11));
}

TEST_CASE("moments: monotone in [0,1] for j <= 200") {
  std::vector<SurvivalLaw> laws = {
      SurvivalLaw::degenerate(0.5), SurvivalLaw::beta(2.0, 3.0),
      SurvivalLaw::beta(0.5, 0.5),  SurvivalLaw::power_function(2.0),
      SurvivalLaw::uniform(),       SurvivalLaw::truncated_exponential(1.0),
      SurvivalLaw::truncated_exponential(4.0)};
  for (const SurvivalLaw& law : laws) {
    CAPTURE(law.label());
    double prev = 1.0;
    for (long j = 1; j <= 200; ++j) {
      double m = law.moment(j);
      CHECK(m >= 0.0);
      CHECK(m <= 1.0);
      CHECK(m <= prev + 1e-14);
      prev = m;
    }
  }
}

TEST_CASE("mixed moments: spot values and binomial completeness") {
  CHECK(SurvivalLaw::degenerate(0.5).mixed_moment(1, 1) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(SurvivalLaw::beta(2.0, 3.0).mixed_moment(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(SurvivalLaw::uniform().mixed_moment(1, 1) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  std::vector<SurvivalLaw> laws = {SurvivalLaw::degenerate(0.3), SurvivalLaw::beta(2.0, 3.0),
                                   SurvivalLaw::uniform(),
                                   SurvivalLaw::truncated_exponential(1.0)};
  for (const SurvivalLaw& law : laws) {
    CAPTURE(law.label());
    for (int i = 0; i <= 30; ++i) {
      double total = 0.0;
      for (int j = 0; j <= i; ++j) total += binom_coeff(i, j) * law.mixed_moment(j, i - j);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
    for (long r = 0; r <= 50; ++r) {
      double want = r == 0 ? 1.0 : law.moment(r);
      CHECK(law.mixed_moment(r, 0) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("family coincidences: power(a)=beta(a,1), uniform=power(1)") {
  SurvivalLaw power2 = SurvivalLaw::power_function(2.0);
  SurvivalLaw beta21 = SurvivalLaw::beta(2.0, 1.0);
  SurvivalLaw uni = SurvivalLaw::uniform();
  SurvivalLaw power1 = SurvivalLaw::power_function(1.0);
  for (long j = 1; j <= 200; ++j) {
    CHECK(power2.moment(j) == doctest::Approx(beta21.moment(j)).epsilon(1e-12));
    CHECK(uni.moment(j) == doctest::Approx(power1.moment(j)).epsilon(1e-12));
  }
}

TEST_CASE("density left limit per family") {
  auto power = SurvivalLaw::power_function(2.0).density_left_limit();
  REQUIRE(power.kind == DensityLeftLimit::Kind::Finite);
  CHECK(power.value == doctest::Approx(2.0).epsilon(1e-14));

  auto b23 = SurvivalLaw::beta(2.0, 3.0).density_left_limit();
  REQUIRE(b23.kind == DensityLeftLimit::Kind::Finite);
  CHECK(b23.value == doctest::Approx(0.0));

  auto bhalf = SurvivalLaw::beta(0.5, 0.5).density_left_limit();
  CHECK(bhalf.kind == DensityLeftLimit::Kind::Infinite);

  auto te = SurvivalLaw::truncated_exponential(1.0).density_left_limit();
  REQUIRE(te.kind == DensityLeftLimit::Kind::Finite);
  CHECK(te.value == doctest::Approx(1.0 / std::expm1(1.0)).epsilon(1e-13));
  CHECK(te.left_differentiable);

  CHECK(SurvivalLaw::degenerate(0.5).density_left_limit().kind ==
        DensityLeftLimit::Kind::Undefined);
}

TEST_CASE("lifetime_cdf: spot values and monotonicity") {
  CHECK(SurvivalLaw::degenerate(0.5).lifetime_cdf(1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(SurvivalLaw::uniform().lifetime_cdf(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(SurvivalLaw::beta(2.0, 3.0).lifetime_cdf(0) == doctest::Approx(0.6).epsilon(1e-12));

  for (const SurvivalLaw& law :
       {SurvivalLaw::uniform(), SurvivalLaw::beta(2.0, 3.0),
        SurvivalLaw::truncated_exponential(1.0), SurvivalLaw::degenerate(0.8)}) {
    CAPTURE(law.label());
    double prev = 0.0;
    for (long k = 0; k <= 500; ++k) {
      double c = law.lifetime_cdf(k);
      CHECK(c >= prev - 1e-14);
      prev = c;
    }
    CHECK(law.lifetime_cdf(5000) == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("samplers: empirical moments within 5 standard errors") {
  RngStream rng(12345, 0);
  CHECK(SurvivalLaw::degenerate(0.7).sample(rng) == doctest::Approx(0.7));

  const long n = 1000000;

  auto check_moments = [&](const SurvivalLaw& law, int order) {
    CAPTURE(law.label());
    RngStream stream(98765, static_cast<std::uint64_t>(order));
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
      double x = law.sample(stream);
      REQUIRE(x >= 0.0);
      REQUIRE(x <= 1.0);
      double xo = std::pow(x, order);
      sum += xo;
      sumsq += xo * xo;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    double se = std::sqrt(var / n);
    CHECK(std::abs(mean - law.moment(order)) <= 5.0 * se + 1e-12);
  };

  check_moments(SurvivalLaw::uniform(), 1);
  check_moments(SurvivalLaw::beta(2.0, 3.0), 2);
  check_moments(SurvivalLaw::power_function(2.0), 1);
  check_moments(SurvivalLaw::truncated_exponential(1.0), 1);
  check_moments(SurvivalLaw::truncated_exponential(1.0), 2);
}

TEST_CASE("degenerate(1) is accepted but flagged") {
  SurvivalLaw one = SurvivalLaw::degenerate(1.0);
  CHECK(one.is_point_mass_at_one());
  CHECK(one.moment(100) == doctest::Approx(1.0));
  CHECK_FALSE(SurvivalLaw::degenerate(0.999).is_point_mass_at_one());
}
