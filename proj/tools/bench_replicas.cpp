// Benchmark the OpenMP replica loop against the serial reference
// implementation and confirm they produce identical outcomes.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catastro/grammar.hpp"
#include "catastro/montecarlo.hpp"

using namespace catastro;
using mc::ReplicaOutcome;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool identical(const std::vector<ReplicaOutcome>& a, const std::vector<ReplicaOutcome>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].status != b[i].status || a[i].m != b[i].m || a[i].t != b[i].t) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP replica-loop benchmark"};
  double lambda = 1.0;
  std::string dist = "uniform";
  long replicas = 200000;
  std::uint64_t seed = 20240901;
  app.add_option("--lambda", lambda, "immigration rate");
  app.add_option("--dist", dist, "survival-parameter law");
  app.add_option("--replicas", replicas, "replicas per run");
  app.add_option("--seed", seed, "RNG seed");
  CLI11_PARSE(app, argc, argv);

  SurvivalLaw law = parse_survival_law(dist);
  mc::ReplicaFn replica = [lambda, law](RngStream& rng) {
    return mc::simulate_cat_random(lambda, law, rng);
  };

  auto t0 = Clock::now();
  std::vector<ReplicaOutcome> serial = mc::run_batch_serial(replica, replicas, seed);
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  std::vector<ReplicaOutcome> parallel = mc::run_batch(replica, replicas, seed);
  double t_parallel = seconds_since(t0);

  mc::Estimate mean = mc::estimate_mean_m(serial);
  std::printf("replicas      %ld (lambda=%g, dist=%s)\n", replicas, lambda, dist.c_str());
  std::printf("serial        %.3f s  (%.0f replicas/s)\n", t_serial, replicas / t_serial);
  std::printf("openmp        %.3f s  (%.0f replicas/s, x%.2f)\n", t_parallel,
              replicas / t_parallel, t_serial / t_parallel);
  std::printf("mean M        %.6f +/- %.6f\n", mean.point, mean.std_error);
  bool same = identical(serial, parallel);
  std::printf("outcomes      %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
