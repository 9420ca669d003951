#include "catastro/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "catastro/exact.hpp"
#include "catastro/firework.hpp"
#include "catastro/montecarlo.hpp"
#include "catastro/oracle.hpp"
#include "catastro/report.hpp"

namespace catastro {

namespace {

using mc::Estimate;
using mc::ReplicaOutcome;

struct Checker {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }

  void check_close(const std::string& name, double got, double want, double tol) {
    std::ostringstream ss;
    ss << "got " << format_value(got) << ", want " << format_value(want) << " +/- "
       << format_value(tol);
    check(name, std::abs(got - want) <= tol, ss.str());
  }

  // |estimate - want| <= 4 standard errors
  void check_4se(const std::string& name, const Estimate& e, double want) {
    double slack = 4.0 * e.std_error;
    std::ostringstream ss;
    ss << "estimate " << format_value(e.point) << " +/- 4se=" << format_value(slack)
       << ", want " << format_value(want);
    check(name, std::abs(e.point - want) <= slack, ss.str());
  }
};

void suite_classical(Checker& c, long replicas, std::uint64_t seed) {
  EvalResult exact = classical_extinction_time(1.0, 0.5);
  TruncationReport oracle = truncated_kolmogorov_tau(1.0, SurvivalLaw::degenerate(0.5), 1, 1e-9);
  c.check_close("classical: product vs kolmogorov oracle", oracle.value_at_N, exact.value, 1e-6);

  auto outcomes = mc::run_batch(
      [](RngStream& rng) { return mc::simulate_ipbc(1.0, 0.5, rng); }, replicas, seed);
  Estimate mean_m = mc::estimate_mean_m(outcomes);
  Estimate mean_t = mc::estimate_mean_t(outcomes);
  c.check_4se("classical: simulated mean M", mean_m, exact.value);
  double gap_se = 4.0 * std::sqrt(mean_m.std_error * mean_m.std_error +
                                  mean_t.std_error * mean_t.std_error);
  std::ostringstream ss;
  ss << "mean T " << format_value(mean_t.point) << " vs mean M " << format_value(mean_m.point)
     << ", slack " << format_value(gap_se);
  c.check("classical: Wald identity E(T)=E(M)",
          std::abs(mean_t.point - mean_m.point) <= gap_se, ss.str());
}

void suite_catrandom(Checker& c, long replicas, std::uint64_t seed) {
  EvalResult u = cat_random_expected(3.0, SurvivalLaw::uniform());
  c.check_close("catrandom: uniform lambda=3 is lambda+2", u.value, 5.0, 1e-9);
  EvalResult p2 = cat_random_expected(1.0, SurvivalLaw::power_function(2.0));
  c.check_close("catrandom: power a=2 lambda=1 closed form", p2.value, 7.0, 1e-9);

  SurvivalLaw uniform = SurvivalLaw::uniform();
  auto sim_u = mc::run_batch(
      [&uniform](RngStream& rng) { return mc::simulate_cat_random(3.0, uniform, rng); },
      replicas, seed);
  c.check_4se("catrandom: simulated mean M (uniform, lambda=3)", mc::estimate_mean_m(sim_u), 5.0);

  SurvivalLaw power2 = SurvivalLaw::power_function(2.0);
  auto sim_p = mc::run_batch(
      [&power2](RngStream& rng) { return mc::simulate_cat_random(1.0, power2, rng); },
      replicas, seed + 1);
  c.check_4se("catrandom: simulated mean M (power a=2, lambda=1)", mc::estimate_mean_m(sim_p), 7.0);
}

void suite_euler(Checker& c) {
  for (double p : {0.2, 0.5, 0.8}) {
    SurvivalLaw law = SurvivalLaw::degenerate(p);
    for (double lambda : {0.3, 0.5, 0.9}) {
      EvalResult lhs = cat_random_expected(lambda, law);
      EvalResult rhs = classical_extinction_time(lambda, p);
      std::ostringstream name;
      name << "euler series route: lambda=" << lambda << " p=" << p;
      c.check_close(name.str(), lhs.value, rhs.value, 1e-9);
    }
    for (double lambda : {1.5, 3.0}) {
      EvalResult lhs = cat_random_expected(lambda, law);
      EvalResult rhs = classical_extinction_time(lambda, p);
      std::ostringstream name;
      name << "euler oracle route: lambda=" << lambda << " p=" << p;
      c.check_close(name.str(), lhs.value, rhs.value, 1e-5);
    }
  }
}

void suite_ind(Checker& c) {
  EvalResult s = ind_random_survival(2.0, SurvivalLaw::uniform());
  c.check_close("ind: survival(2, uniform) = 1 - 1/(a lambda)", s.value, 0.5, 1e-8);
  EvalResult closed = ind_random_survival(1.0, SurvivalLaw::beta(2.0, 1.0));
  EvalResult series = ind_random_survival_series(1.0, SurvivalLaw::beta(2.0, 1.0));
  c.check_close("ind: generic series route vs 2F1 closed form (beta 2,1)",
                series.value, closed.value, 1e-8);
}

void suite_renewal(Checker& c, long replicas, std::uint64_t seed) {
  RadiusLaw law = RadiusLaw::finite_support({0.5, 0.25, 0.25});
  RenewalData renewal = renewal_sequence(law, 6);
  bool all = true;
  std::ostringstream detail;
  for (long n = 1; n <= 6; ++n) {
    double brute = brute_force_firework_tail(law, static_cast<int>(n) + 1);
    double got = renewal.u[static_cast<std::size_t>(n)];
    if (std::abs(got - brute) > 1e-12) {
      all = false;
      detail << "u_" << n << "=" << format_value(got) << " vs enum "
             << format_value(brute) << "; ";
    }
  }
  c.check("renewal: u_n matches brute-force enumeration (n<=6)", all,
          all ? "all within 1e-12" : detail.str());

  EvalResult range = firework_expected_range(law);
  c.check_close("renewal: E(M_F) = 8/3 via product", range.value, 8.0 / 3.0, 1e-12);

  RenewalData long_run = renewal_sequence(law, 200);
  double partial = 0.0;
  for (double un : long_run.u) partial += un;
  c.check_close("renewal: E(M_F) via sum of u_n at n=200", partial, 8.0 / 3.0, 1e-6);

  auto outcomes = mc::run_batch(
      [&law](RngStream& rng) {
        long mf = mc::simulate_firework(law, 1000, rng);
        ReplicaOutcome out;
        out.m = mf;
        out.status = mf >= 1000 ? ReplicaOutcome::Status::Censored
                                : ReplicaOutcome::Status::Extinct;
        return out;
      },
      replicas, seed);
  c.check_4se("renewal: E(M_F) by Monte Carlo", mc::estimate_mean_m(outcomes), 8.0 / 3.0);
}

void suite_bridge(Checker& c, long replicas, std::uint64_t seed) {
  bool grid_ok = true;
  std::ostringstream detail;
  for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
    for (double p : {0.2, 0.4, 0.6, 0.8}) {
      RadiusLaw eff = RadiusLaw::effective(RadiusLaw::geometric_lifetime(p), lambda);
      EvalResult mc_val = bridge_expected(lambda, firework_expected_range(eff));
      EvalResult classical = classical_extinction_time(lambda, p);
      if (std::abs(mc_val.value - classical.value) > 1e-8) {
        grid_ok = false;
        detail << "(lambda=" << lambda << ",p=" << p << "): " << format_value(mc_val.value)
               << " vs " << format_value(classical.value) << "; ";
      }
    }
  }
  c.check("bridge: geometric-lifetime reduction on the 4x4 grid", grid_ok,
          grid_ok ? "all within 1e-8" : detail.str());

  RadiusLaw eff_uniform = RadiusLaw::effective(
      RadiusLaw::from_survival_law(SurvivalLaw::uniform()), 2.0);
  double via_bridge = bridge_survival(2.0, firework_survival(eff_uniform).value);
  c.check_close("bridge: survival via firework equals 0.5", via_bridge, 0.5, 1e-8);

  SurvivalLaw uniform = SurvivalLaw::uniform();
  auto outcomes = mc::run_batch(
      [&uniform](RngStream& rng) {
        return mc::simulate_ind_random(2.0, uniform, rng, {}, 50);
      },
      replicas, seed);
  double u50 = renewal_sequence(eff_uniform, 50).u[50];
  c.check_4se("bridge: simulated P(alive after 50) vs (1+lambda)/lambda u_50",
              mc::estimate_alive(outcomes), 1.5 * u50);
}

void suite_criteria(Checker& c) {
  SurvivalLaw te = SurvivalLaw::truncated_exponential(1.0);
  double lambda_c = std::exp(1.0) - 1.0;
  CriterionVerdict at2 = survival_criterion(2.0, te);
  c.check("criteria: truncexp lambda=2 survives",
          at2.verdict == CriterionVerdict::Verdict::Survives, "density route");
  c.check_close("criteria: truncexp critical rate e-1",
                at2.critical_rate.value_or(-1.0), lambda_c, 1e-12);
  c.check("criteria: truncexp lambda=1.5 extinct",
          survival_criterion(1.5, te).verdict == CriterionVerdict::Verdict::Extinct,
          "density route");
  CriterionVerdict crit = survival_criterion(lambda_c, te);
  c.check("criteria: truncexp at lambda_c extinct (critical, differentiable)",
          crit.verdict == CriterionVerdict::Verdict::Extinct &&
              crit.route == CriterionVerdict::Route::CriticalDifferentiable,
          "critical case");

  bool beta_ok = true;
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    beta_ok = beta_ok &&
              survival_criterion(lambda, SurvivalLaw::beta(2.0, 3.0)).verdict ==
                  CriterionVerdict::Verdict::Extinct &&
              survival_criterion(lambda, SurvivalLaw::beta(0.5, 0.5)).verdict ==
                  CriterionVerdict::Verdict::Survives;
  }
  c.check("criteria: beta(2,3) extinct and beta(0.5,0.5) survives for all lambda",
          beta_ok, "closed-form family route");

  EvalResult em = ind_random_expected(2.0, SurvivalLaw::uniform());
  CriterionVerdict uv = survival_criterion(2.0, SurvivalLaw::uniform());
  c.check("criteria: uniform lambda=2 has E(M)=inf yet survives",
          em.is_infinite() && uv.verdict == CriterionVerdict::Verdict::Survives,
          "moment sum diverges, a*lambda>1");

  EvalResult em_te = ind_random_expected(1.5, te);
  c.check("criteria: truncexp lambda=1.5 extinct with E(M)=inf",
          em_te.is_infinite() &&
              survival_criterion(1.5, te).verdict == CriterionVerdict::Verdict::Extinct,
          "harmonic moment lower bound");
}

void suite_monotonicity(Checker& c) {
  for (const SurvivalLaw& law : {SurvivalLaw::uniform(), SurvivalLaw::beta(2.0, 1.0)}) {
    double prev = -1.0;
    bool ok = true;
    std::ostringstream detail;
    for (double lambda = 0.05; lambda <= 5.0 + 1e-12; lambda += 0.05) {
      double v = ind_random_survival(lambda, law).value;
      if (v < prev - 1e-9) {
        ok = false;
        detail << "drop at lambda=" << lambda << "; ";
      }
      prev = v;
    }
    c.check("monotonicity: survival non-decreasing in lambda (" + law.label() + ")", ok,
            ok ? "grid step 0.05 on (0,5]" : detail.str());
  }
}

std::string simulate_json(long replicas, std::uint64_t seed, int workers) {
  SurvivalLaw uniform = SurvivalLaw::uniform();
  auto outcomes = mc::run_batch(
      [&uniform](RngStream& rng) { return mc::simulate_cat_random(1.0, uniform, rng); },
      replicas, seed, workers);
  Estimate mean_m = mc::estimate_mean_m(outcomes);
  Estimate mean_t = mc::estimate_mean_t(outcomes);
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, Estimate>> quantities = {
      {"mean_catastrophes", mean_m}, {"mean_extinction_time", mean_t}};
  for (const auto& [q, e] : quantities) {
    ReportRow row;
    row.lambda = 1.0;
    row.dist = "uniform";
    row.model = "cat";
    row.quantity = q;
    row.value = e.point;
    row.replicas = e.replicas_used;
    row.std_error = e.std_error;
    rows.push_back(row);
  }
  std::ostringstream os;
  emit_report(os, rows, OutputFormat::Json);
  return os.str();
}

void suite_determinism(Checker& c, long replicas, std::uint64_t seed) {
  std::string w1 = simulate_json(replicas, seed, 1);
  std::string w4 = simulate_json(replicas, seed, 4);
  std::string w8 = simulate_json(replicas, seed, 8);
  c.check("determinism: identical JSON under 1, 4, 8 workers", w1 == w4 && w4 == w8,
          w1 == w4 && w4 == w8 ? "bit-identical" : "outputs differ");
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const std::string& suite, long replicas,
                                                std::uint64_t seed) {
  Checker c;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "classical") { suite_classical(c, replicas, seed); known = true; }
  if (all || suite == "catrandom") { suite_catrandom(c, replicas, seed); known = true; }
  if (all || suite == "euler") { suite_euler(c); known = true; }
  if (all || suite == "ind") { suite_ind(c); known = true; }
  if (all || suite == "renewal") { suite_renewal(c, replicas, seed); known = true; }
  if (all || suite == "bridge") { suite_bridge(c, replicas, seed); known = true; }
  if (all || suite == "criteria") { suite_criteria(c); known = true; }
  if (all || suite == "monotonicity") { suite_monotonicity(c); known = true; }
  if (all || suite == "determinism") { suite_determinism(c, replicas, seed); known = true; }
  if (!known)
    throw std::invalid_argument(
        "unknown suite '" + suite +
        "' (classical|catrandom|euler|ind|renewal|bridge|criteria|monotonicity|determinism|all)");
  return c.results;
}

}  // namespace catastro
