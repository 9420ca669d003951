#include "catastro/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catastro::mc {

namespace {

constexpr double kZ = 1.959963984540054;  // 95% normal quantile

ReplicaOutcome censored(ReplicaOutcome::CensorReason why, long m, double t, bool alive) {
  ReplicaOutcome out;
  out.status = ReplicaOutcome::Status::Censored;
  out.reason = why;
  out.m = m;
  out.t = t;
  out.alive_at_horizon = alive;
  return out;
}

ReplicaOutcome extinct(long m, double t) {
  ReplicaOutcome out;
  out.m = m;
  out.t = t;
  return out;
}

// shared skeleton for the two binomial-thinning models
template <typename Thin>
ReplicaOutcome run_thinning_chain(double lambda, RngStream& rng, const Caps& caps, Thin thin) {
  const double birth_prob = lambda / (1.0 + lambda);
  long pop = 1;
  long long births = 1;
  long m = 0;
  double t = 0.0;
  while (true) {
    if (rng.bernoulli(birth_prob)) {
      ++pop;
      if (++births > caps.max_population)
        return censored(ReplicaOutcome::CensorReason::MaxPopulation, m, t, true);
    } else {
      ++m;
      t += rng.exponential();
      pop = thin(pop, rng);
      if (pop == 0) return extinct(m, t);
      if (m >= caps.max_catastrophes)
        return censored(ReplicaOutcome::CensorReason::MaxCatastrophes, m, t, true);
    }
  }
}

// shared skeleton for the per-individual-lifetime models; draw_lifetime
// returns the number of catastrophes a newborn survives (-1 = immortal)
template <typename DrawLifetime>
ReplicaOutcome run_lifetime_chain(double lambda, RngStream& rng, const Caps& caps,
                                  std::optional<long> horizon, DrawLifetime draw_lifetime) {
  const double birth_prob = lambda / (1.0 + lambda);
  std::unordered_map<long, long> deaths_at;  // catastrophe index -> count
  long alive = 0;
  long immortal = 0;
  long long births = 0;
  long m = 0;
  double t = 0.0;

  auto add_individual = [&](void) {
    long L = draw_lifetime(rng);
    if (L < 0) {
      ++immortal;
    } else {
      ++deaths_at[m + L + 1];
    }
    ++alive;
    ++births;
  };
  add_individual();

  while (true) {
    if (rng.bernoulli(birth_prob)) {
      add_individual();
      if (births > caps.max_population)
        return censored(ReplicaOutcome::CensorReason::MaxPopulation, m, t, true);
    } else {
      ++m;
      t += rng.exponential();
      if (auto it = deaths_at.find(m); it != deaths_at.end()) {
        alive -= it->second;
        deaths_at.erase(it);
      }
      if (alive - immortal < 0)
        throw std::logic_error("lifetime chain: negative mortal count");
      if (alive == 0) {
        ReplicaOutcome out = extinct(m, t);
        if (horizon && m > *horizon) {
          // extinction strictly after the horizon still counts as alive there
          out.alive_at_horizon = true;
        }
        return out;
      }
      if (horizon && m >= *horizon)
        return censored(ReplicaOutcome::CensorReason::Horizon, m, t, true);
      if (m >= caps.max_catastrophes)
        return censored(ReplicaOutcome::CensorReason::MaxCatastrophes, m, t, true);
    }
  }
}

int worker_cap_from_env() {
  if (const char* s = std::getenv("CATASTRO_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  return 0;
}

Estimate mean_estimate(const std::vector<ReplicaOutcome>& outcomes,
                       const std::function<double(const ReplicaOutcome&)>& value) {
  double sum = 0.0, sumsq = 0.0;
  long n = 0, censored_count = 0;
  for (const ReplicaOutcome& o : outcomes) {
    if (o.status == ReplicaOutcome::Status::Censored) {
      ++censored_count;
      continue;
    }
    double v = value(o);
    sum += v;
    sumsq += v * v;
    ++n;
  }
  if (n == 0) throw std::runtime_error("estimate: all replicas censored");
  Estimate e;
  e.replicas_used = n;
  e.censored_count = censored_count;
  e.point = sum / double(n);
  double var = (n > 1) ? std::max(0.0, (sumsq - sum * sum / double(n)) / double(n - 1)) : 0.0;
  e.std_error = std::sqrt(var / double(n));
  e.ci_low = e.point - kZ * e.std_error;
  e.ci_high = e.point + kZ * e.std_error;
  return e;
}

}  // namespace

ReplicaOutcome simulate_ipbc(double lambda, double p, RngStream& rng, const Caps& caps) {
  if (!(lambda > 0.0)) throw std::invalid_argument("simulate_ipbc: lambda must be > 0");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("simulate_ipbc: p must be in [0,1]");
  return run_thinning_chain(lambda, rng, caps,
                            [p](long pop, RngStream& r) { return r.binomial(pop, p); });
}

ReplicaOutcome simulate_cat_random(double lambda, const SurvivalLaw& law, RngStream& rng,
                                   const Caps& caps) {
  if (!(lambda > 0.0)) throw std::invalid_argument("simulate_cat_random: lambda must be > 0");
  return run_thinning_chain(lambda, rng, caps, [&law](long pop, RngStream& r) {
    return r.binomial(pop, law.sample(r));
  });
}

ReplicaOutcome simulate_ind_random(double lambda, const SurvivalLaw& law, RngStream& rng,
                                   const Caps& caps, std::optional<long> horizon) {
  if (!(lambda > 0.0)) throw std::invalid_argument("simulate_ind_random: lambda must be > 0");
  return run_lifetime_chain(lambda, rng, caps, horizon, [&law](RngStream& r) {
    return r.geometric_floor(law.sample(r));
  });
}

ReplicaOutcome simulate_gipc(double lambda, const RadiusLaw& lifetime, RngStream& rng,
                             const Caps& caps, std::optional<long> horizon) {
  if (!(lambda > 0.0)) throw std::invalid_argument("simulate_gipc: lambda must be > 0");
  return run_lifetime_chain(lambda, rng, caps, horizon,
                            [&lifetime](RngStream& r) { return lifetime.sample(r); });
}

long simulate_firework(const RadiusLaw& alpha, long horizon, RngStream& rng) {
  if (horizon < 1) throw std::invalid_argument("simulate_firework: horizon must be >= 1");
  long r0 = alpha.sample(rng);
  if (r0 < 0) return horizon;
  long frontier = r0;
  for (long j = 1; j <= frontier && j < horizon; ++j) {
    long rj = alpha.sample(rng);
    if (rj < 0) return horizon;
    frontier = std::max(frontier, j + rj);
  }
  return std::min(frontier + 1, horizon);
}

long simulate_firework_random_individuals(const RadiusLaw& base, double lambda,
                                          long horizon, RngStream& rng) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("simulate_firework_random_individuals: lambda must be > 0");
  if (horizon < 1)
    throw std::invalid_argument("simulate_firework_random_individuals: horizon must be >= 1");
  const double success = 1.0 / (1.0 + lambda);
  auto site_radius = [&](RngStream& r) -> long {
    // N ~ Geo(1/(1+lambda)) on {0,1,...}: number of failures before success
    long n = r.geometric_floor(1.0 - success);
    long best = 0;
    for (long i = 0; i < n; ++i) {
      long ri = base.sample(r);
      if (ri < 0) return -1;
      best = std::max(best, ri);
    }
    return best;
  };
  long r0 = site_radius(rng);
  if (r0 < 0) return horizon;
  long frontier = r0;
  for (long j = 1; j <= frontier && j < horizon; ++j) {
    long rj = site_radius(rng);
    if (rj < 0) return horizon;
    frontier = std::max(frontier, j + rj);
  }
  return std::min(frontier + 1, horizon);
}

std::vector<ReplicaOutcome> run_batch(const ReplicaFn& replica, long replicas,
                                      std::uint64_t seed, int workers) {
  if (replicas < 1) throw std::invalid_argument("run_batch: replicas must be >= 1");
  std::vector<ReplicaOutcome> out(static_cast<std::size_t>(replicas));
  int cap = workers > 0 ? workers : worker_cap_from_env();
#ifdef _OPENMP
  if (cap > 0) {
#pragma omp parallel for schedule(static) num_threads(cap)
    for (long i = 0; i < replicas; ++i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = replica(rng);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < replicas; ++i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = replica(rng);
    }
  }
#else
  (void)cap;
  for (long i = 0; i < replicas; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = replica(rng);
  }
#endif
  return out;
}

std::vector<ReplicaOutcome> run_batch_serial(const ReplicaFn& replica, long replicas,
                                             std::uint64_t seed) {
  if (replicas < 1) throw std::invalid_argument("run_batch_serial: replicas must be >= 1");
  std::vector<ReplicaOutcome> out(static_cast<std::size_t>(replicas));
  for (long i = 0; i < replicas; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = replica(rng);
  }
  return out;
}

Estimate estimate_mean_m(const std::vector<ReplicaOutcome>& outcomes) {
  return mean_estimate(outcomes, [](const ReplicaOutcome& o) { return double(o.m); });
}

Estimate estimate_mean_t(const std::vector<ReplicaOutcome>& outcomes) {
  return mean_estimate(outcomes, [](const ReplicaOutcome& o) { return o.t; });
}

Estimate estimate_proportion(const std::vector<ReplicaOutcome>& outcomes,
                             const std::function<bool(const ReplicaOutcome&)>& pred) {
  if (outcomes.empty()) throw std::runtime_error("estimate: no replicas");
  long n = static_cast<long>(outcomes.size());
  long hits = 0;
  long censored_count = 0;
  for (const ReplicaOutcome& o : outcomes) {
    if (pred(o)) ++hits;
    if (o.status == ReplicaOutcome::Status::Censored) ++censored_count;
  }
  double phat = double(hits) / double(n);
  Estimate e;
  e.replicas_used = n;
  e.censored_count = censored_count;
  e.point = phat;
  e.std_error = std::sqrt(phat * (1.0 - phat) / double(n));
  // Wilson interval
  double z2 = kZ * kZ;
  double denom = 1.0 + z2 / double(n);
  double center = (phat + z2 / (2.0 * double(n))) / denom;
  double half = kZ * std::sqrt(phat * (1.0 - phat) / double(n) + z2 / (4.0 * double(n) * double(n))) / denom;
  e.ci_low = center - half;
  e.ci_high = center + half;
  return e;
}

Estimate estimate_alive(const std::vector<ReplicaOutcome>& outcomes) {
  return estimate_proportion(outcomes,
                             [](const ReplicaOutcome& o) { return o.alive_at_horizon; });
}

}  // namespace catastro::mc
