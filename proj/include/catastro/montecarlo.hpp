#ifndef CATASTRO_MONTECARLO_HPP
#define CATASTRO_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "catastro/radius_law.hpp"
#include "catastro/rng.hpp"
#include "catastro/survival_law.hpp"

namespace catastro::mc {

struct Caps {
  long max_catastrophes = 1000000;
  long long max_population = 100000000;  // aggregate births
};

struct ReplicaOutcome {
  enum class Status { Extinct, Censored };
  enum class CensorReason { None, MaxCatastrophes, MaxPopulation, Horizon };

  Status status = Status::Extinct;
  long m = 0;     // catastrophes until extinction (or at censoring)
  double t = 0;   // extinction time (sum of unit exponentials)
  bool alive_at_horizon = false;
  CensorReason reason = CensorReason::None;
};

// Embedded jump chain: each event is a birth with probability
// lambda/(1+lambda); T is reconstructed from unit-exponential
// inter-catastrophe gaps.
ReplicaOutcome simulate_ipbc(double lambda, double p, RngStream& rng, const Caps& caps = {});

// survival parameter redrawn from nu at each catastrophe
ReplicaOutcome simulate_cat_random(double lambda, const SurvivalLaw& law, RngStream& rng,
                                   const Caps& caps = {});

// each newborn draws a permanent parameter x ~ nu, then a survived-
// catastrophe count L with P(L >= k) = x^k; state is a death-epoch bucket map
ReplicaOutcome simulate_ind_random(double lambda, const SurvivalLaw& law, RngStream& rng,
                                   const Caps& caps = {},
                                   std::optional<long> horizon = std::nullopt);

// newborns draw the survived-catastrophe count directly from the lifetime law
ReplicaOutcome simulate_gipc(double lambda, const RadiusLaw& lifetime, RngStream& rng,
                             const Caps& caps = {},
                             std::optional<long> horizon = std::nullopt);

// frontier simulation of the Firework process; returns min(M_F, horizon)
long simulate_firework(const RadiusLaw& alpha, long horizon, RngStream& rng);
// Per-site maximum over a Geometric(1/(1+lambda)) number of base-law radii
// (the random-individuals form), instead of drawing from the effective CDF.
long simulate_firework_random_individuals(const RadiusLaw& base, double lambda,
                                          long horizon, RngStream& rng);

using ReplicaFn = std::function<ReplicaOutcome(RngStream&)>;

// Replica i runs on the stream derived from (seed, i); outcomes are written
// by index, so the result is bit-identical for any worker count.
// workers = 0 picks OpenMP's default, capped by the CATASTRO_THREADS
// environment variable when set.
std::vector<ReplicaOutcome> run_batch(const ReplicaFn& replica, long replicas,
                                      std::uint64_t seed, int workers = 0);
// serial reference implementation, kept for testing and benchmarking
std::vector<ReplicaOutcome> run_batch_serial(const ReplicaFn& replica, long replicas,
                                             std::uint64_t seed);

struct Estimate {
  double point = 0;
  double std_error = 0;
  double ci_low = 0;
  double ci_high = 0;
  long replicas_used = 0;
  long censored_count = 0;
};

// mean of m over extinct replicas (normal CI); censored replicas reported
Estimate estimate_mean_m(const std::vector<ReplicaOutcome>& outcomes);
// mean of t over extinct replicas
Estimate estimate_mean_t(const std::vector<ReplicaOutcome>& outcomes);
// Wilson interval for a predicate over all replicas
Estimate estimate_proportion(const std::vector<ReplicaOutcome>& outcomes,
                             const std::function<bool(const ReplicaOutcome&)>& pred);
// Wilson interval for P(alive at the horizon)
Estimate estimate_alive(const std::vector<ReplicaOutcome>& outcomes);

}  // namespace catastro::mc

#endif
