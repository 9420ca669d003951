// Command-line front end: exact evaluation, simulation, verification,
// renewal analytics, parameter sweeps, and drift diagnostics.
//
// Exit codes: 0 success, 2 argument/grammar parse error, 3 verification
// failure. Seeds default to the fixed constant 20240901 so published runs
// reproduce by default.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catastro/exact.hpp"
#include "catastro/firework.hpp"
#include "catastro/grammar.hpp"
#include "catastro/montecarlo.hpp"
#include "catastro/oracle.hpp"
#include "catastro/report.hpp"
#include "catastro/verify.hpp"

namespace {

using namespace catastro;
using mc::Estimate;
using mc::ReplicaOutcome;

constexpr std::uint64_t kDefaultSeed = 20240901;

struct Options {
  std::string model = "classical";
  std::string dist;
  std::string lifetime;
  double lambda = 1.0;
  double p = 0.5;
  long replicas = 100000;
  std::uint64_t seed = kDefaultSeed;
  long horizon = 50;
  bool horizon_set = false;
  double tol = 1e-9;
  std::string out = "table";
  std::string grid;
  std::string suite = "all";
  bool effective = false;
};

OutputFormat parse_format(const std::string& out) {
  if (out == "table") return OutputFormat::Table;
  if (out == "csv") return OutputFormat::Csv;
  if (out == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + out + "' (table|csv|json)");
}

struct Grid {
  double lo = 0, hi = 0, step = 0;
};

Grid parse_grid(const std::string& spec) {
  Grid g;
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("cannot parse grid '" + spec + "': bad number '" + tok + "'");
    parts.push_back(v);
  }
  if (parts.size() != 3)
    throw std::invalid_argument("grid must be lo:hi:step, got '" + spec + "'");
  g.lo = parts[0];
  g.hi = parts[1];
  g.step = parts[2];
  if (g.step <= 0 || !(g.lo <= g.hi))
    throw std::invalid_argument("grid needs lo <= hi and step > 0");
  return g;
}

ReportRow base_row(const Options& opt, std::string quantity) {
  ReportRow row;
  row.lambda = opt.lambda;
  row.dist = !opt.dist.empty() ? opt.dist : opt.lifetime;
  row.model = opt.model;
  row.quantity = std::move(quantity);
  return row;
}

ReportRow eval_row(const Options& opt, const std::string& quantity, const EvalResult& e) {
  ReportRow row = base_row(opt, quantity);
  if (e.is_undefined()) throw std::runtime_error("'" + quantity + "' undefined: " + e.note);
  row.value = e.is_infinite() ? std::numeric_limits<double>::infinity() : e.value;
  if (e.is_finite()) row.abs_error = e.abs_error;
  row.method = method_name(e.method);
  return row;
}

ReportRow estimate_row(const Options& opt, const std::string& quantity, const Estimate& e) {
  ReportRow row = base_row(opt, quantity);
  row.value = e.point;
  row.method = "simulation";
  row.replicas = e.replicas_used;
  row.std_error = e.std_error;
  return row;
}

std::vector<ReportRow> exact_rows(const Options& opt) {
  std::vector<ReportRow> rows;
  if (opt.model == "classical") {
    EvalResult e = classical_extinction_time(opt.lambda, opt.p);
    rows.push_back(eval_row(opt, "expected_catastrophes", e));
    rows.push_back(eval_row(opt, "expected_extinction_time", e));
    rows[0].dist = rows[1].dist = "degenerate:p=" + format_value(opt.p);
  } else if (opt.model == "cat") {
    SurvivalLaw law = parse_survival_law(opt.dist);
    rows.push_back(eval_row(opt, "expected_catastrophes",
                            cat_random_expected(opt.lambda, law)));
  } else if (opt.model == "ind") {
    SurvivalLaw law = parse_survival_law(opt.dist);
    rows.push_back(eval_row(opt, "survival", ind_random_survival(opt.lambda, law)));
    rows.push_back(eval_row(opt, "expected_catastrophes",
                            ind_random_expected(opt.lambda, law)));
    CriterionVerdict v = survival_criterion(opt.lambda, law);
    if (v.critical_rate) {
      ReportRow row = base_row(opt, "critical_rate");
      row.value = *v.critical_rate;
      row.method = "closed-form";
      rows.push_back(row);
    }
  } else if (opt.model == "gipc") {
    RadiusLaw lifetime = parse_radius_law(opt.lifetime);
    RadiusLaw eff = RadiusLaw::effective(lifetime, opt.lambda);
    rows.push_back(eval_row(opt, "expected_catastrophes",
                            bridge_expected(opt.lambda, firework_expected_range(eff))));
    EvalResult fs = firework_survival(eff);
    ReportRow row = base_row(opt, "survival");
    row.value = bridge_survival(opt.lambda, fs.value);
    row.method = method_name(fs.method);
    rows.push_back(row);
  } else {
    throw std::invalid_argument("unknown model '" + opt.model +
                                "' (classical|cat|ind|gipc)");
  }
  return rows;
}

int cmd_exact(const Options& opt) {
  std::vector<ReportRow> rows = exact_rows(opt);
  emit_report(std::cout, rows, parse_format(opt.out));
  return 0;
}

int cmd_simulate(const Options& opt) {
  mc::ReplicaFn replica;
  std::optional<long> horizon;
  if (opt.horizon_set) horizon = opt.horizon;
  if (opt.model == "classical") {
    double lambda = opt.lambda, p = opt.p;
    replica = [lambda, p](RngStream& rng) { return mc::simulate_ipbc(lambda, p, rng); };
  } else if (opt.model == "cat") {
    SurvivalLaw law = parse_survival_law(opt.dist);
    double lambda = opt.lambda;
    replica = [lambda, law](RngStream& rng) {
      return mc::simulate_cat_random(lambda, law, rng);
    };
  } else if (opt.model == "ind") {
    SurvivalLaw law = parse_survival_law(opt.dist);
    double lambda = opt.lambda;
    replica = [lambda, law, horizon](RngStream& rng) {
      return mc::simulate_ind_random(lambda, law, rng, {}, horizon);
    };
  } else if (opt.model == "gipc") {
    RadiusLaw lifetime = parse_radius_law(opt.lifetime);
    double lambda = opt.lambda;
    replica = [lambda, lifetime, horizon](RngStream& rng) {
      return mc::simulate_gipc(lambda, lifetime, rng, {}, horizon);
    };
  } else {
    throw std::invalid_argument("unknown model '" + opt.model +
                                "' (classical|cat|ind|gipc)");
  }

  std::vector<ReplicaOutcome> outcomes = mc::run_batch(replica, opt.replicas, opt.seed);
  std::vector<ReportRow> rows;
  long extinct = 0;
  for (const ReplicaOutcome& o : outcomes)
    if (o.status == ReplicaOutcome::Status::Extinct) ++extinct;
  if (extinct > 0) {
    rows.push_back(estimate_row(opt, "mean_catastrophes", mc::estimate_mean_m(outcomes)));
    rows.push_back(estimate_row(opt, "mean_extinction_time", mc::estimate_mean_t(outcomes)));
  }
  if (opt.horizon_set)
    rows.push_back(estimate_row(opt, "p_alive_at_horizon", mc::estimate_alive(outcomes)));
  emit_report(std::cout, rows, parse_format(opt.out));
  return 0;
}

int cmd_verify(const Options& opt) {
  std::vector<CheckResult> results =
      run_verification_suite(opt.suite, opt.replicas, opt.seed);
  bool all_pass = true;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ')';
    std::cout << '\n';
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << " ("
            << results.size() << " checks)\n";
  return all_pass ? 0 : 3;
}

int cmd_renewal(const Options& opt) {
  RadiusLaw law = parse_radius_law(opt.lifetime);
  if (opt.effective) law = RadiusLaw::effective(law, opt.lambda);
  long n_max = opt.horizon;
  RenewalData data = renewal_sequence(law, n_max);
  std::vector<ReportRow> rows;
  for (long n = 0; n <= n_max; ++n) {
    ReportRow row = base_row(opt, "u_" + std::to_string(n));
    row.value = data.u[static_cast<std::size_t>(n)];
    row.method = "series";
    if (!opt.effective) row.lambda.reset();
    rows.push_back(row);
  }
  {
    ReportRow row = base_row(opt, "defect_mass");
    row.value = data.f_infinity;
    row.method = "product";
    if (!opt.effective) row.lambda.reset();
    rows.push_back(row);
  }
  rows.push_back(eval_row(opt, "expected_range", firework_expected_range(law)));
  rows.push_back(eval_row(opt, "survival", firework_survival(law)));
  if (!opt.effective) {
    rows[rows.size() - 2].lambda.reset();
    rows[rows.size() - 1].lambda.reset();
  }
  emit_report(std::cout, rows, parse_format(opt.out));
  return 0;
}

int cmd_sweep(const Options& opt) {
  Grid grid = parse_grid(opt.grid);
  std::vector<ReportRow> rows;
  Options point = opt;
  for (double lambda = grid.lo; lambda <= grid.hi + 1e-12 * grid.step; lambda += grid.step) {
    point.lambda = lambda;
    for (ReportRow& row : exact_rows(point)) rows.push_back(std::move(row));
  }
  emit_report(std::cout, rows, parse_format(opt.out));
  return 0;
}

int cmd_drift(const Options& opt) {
  SurvivalLaw law = parse_survival_law(opt.dist);
  std::vector<ReportRow> rows;
  for (long i = 0; i <= opt.horizon; ++i) {
    ReportRow row = base_row(opt, "drift_at_" + std::to_string(i));
    row.value = foster_drift(opt.lambda, law, i);
    row.method = "closed-form";
    rows.push_back(row);
  }
  emit_report(std::cout, rows, parse_format(opt.out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immigration processes with binomial catastrophes: exact values, "
               "simulation, and verification"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* sub, bool wants_out = true) {
    sub->add_option("--model", opt.model, "classical|cat|ind|gipc");
    sub->add_option("--dist", opt.dist,
                    "survival-parameter law: degenerate:p=<f>|beta:a=<f>,b=<f>|"
                    "power:a=<f>|uniform|truncexp:gamma=<f>");
    sub->add_option("--lifetime", opt.lifetime,
                    "radius/lifetime law: support:0=<f>,...|geomlife:p=<f>|fromdist:<dist>");
    sub->add_option("--lambda", opt.lambda, "immigration rate");
    sub->add_option("--p", opt.p, "classical-model survival probability");
    sub->add_option("--tol", opt.tol, "tolerance override");
    if (wants_out) sub->add_option("--out", opt.out, "table|csv|json");
  };

  CLI::App* exact = app.add_subcommand("exact", "exact/series/oracle evaluation");
  add_common(exact);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimation");
  add_common(simulate);
  simulate->add_option("--replicas", opt.replicas, "number of replicas");
  simulate->add_option("--seed", opt.seed, "RNG seed (default 20240901)");
  auto* sim_horizon = simulate->add_option("--horizon", opt.horizon,
                                           "catastrophe horizon for alive-probability");

  CLI::App* verify = app.add_subcommand("verify", "run acceptance checks");
  add_common(verify, false);
  verify->add_option("--suite", opt.suite,
                     "classical|catrandom|euler|ind|renewal|bridge|criteria|"
                     "monotonicity|determinism|all");
  verify->add_option("--replicas", opt.replicas, "replicas for simulation checks");
  verify->add_option("--seed", opt.seed, "RNG seed");

  CLI::App* renewal = app.add_subcommand("renewal", "renewal sequence u_n and range");
  add_common(renewal);
  renewal->add_option("--horizon", opt.horizon, "largest n for u_n (default 50)");
  renewal->add_flag("--effective", opt.effective,
                    "apply the per-site geometric maximum at rate --lambda");

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate over a lambda grid");
  add_common(sweep);
  sweep->add_option("--grid", opt.grid, "lambda grid lo:hi:step")->required();

  CLI::App* drift = app.add_subcommand("drift", "one-step drift of the embedded chain");
  add_common(drift);
  drift->add_option("--horizon", opt.horizon, "largest population level (default 50)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  opt.horizon_set = sim_horizon->count() > 0;

  try {
    if (exact->parsed()) return cmd_exact(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (renewal->parsed()) return cmd_renewal(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (drift->parsed()) return cmd_drift(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
