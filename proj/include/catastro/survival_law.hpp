#ifndef CATASTRO_SURVIVAL_LAW_HPP
#define CATASTRO_SURVIVAL_LAW_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "catastro/rng.hpp"

namespace catastro {

// Left-limit of the density at 1: finite value, +infinity, or undefined
// (no density available for the family).
struct DensityLeftLimit {
  enum class Kind { Finite, Infinite, Undefined };
  Kind kind = Kind::Undefined;
  double value = 0.0;  // valid when Finite
  bool left_differentiable = false;
};

// A survival-parameter distribution on [0,1] with analytic moments,
// a sampler, and density boundary data.
class SurvivalLaw {
 public:
  enum class Kind {
    Degenerate,            // point mass at p
    Beta,                  // Beta(a,b)
    PowerFunction,         // density a*x^(a-1); identical to Beta(a,1)
    Uniform,               // identical to PowerFunction(1)
    TruncatedExponential,  // density gamma*exp(-gamma*x)/(1-exp(-gamma)) on [0,1]
    CustomMoments,         // caller-supplied moment function and sampler
  };

  using MomentFn = std::function<double(long)>;
  using SamplerFn = std::function<double(RngStream&)>;

  static SurvivalLaw degenerate(double p);
  static SurvivalLaw beta(double a, double b);
  static SurvivalLaw power_function(double a);
  static SurvivalLaw uniform();
  static SurvivalLaw truncated_exponential(double gamma);
  static SurvivalLaw custom(MomentFn moments, SamplerFn sampler,
                            std::string label = "custom");

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double gamma() const { return gamma_; }
  // Degenerate(1) is accepted but flagged: several formulas exclude it.
  bool is_point_mass_at_one() const;
  const std::string& label() const { return label_; }

  // E[X^j], exact to closed form or quadrature abs error <= 1e-12.
  double moment(long j) const;

  // integral of p^r (1-p)^s dnu(p)
  double mixed_moment(long r, long s) const;

  DensityLeftLimit density_left_limit() const;

  // one draw distributed as nu
  double sample(RngStream& rng) const;

  // P(L <= k) = 1 - E[X^{k+1}]: CDF of the number of catastrophes an
  // individual with nu-distributed parameter survives.
  double lifetime_cdf(long k) const;

 private:
  SurvivalLaw() = default;

  Kind kind_ = Kind::Uniform;
  double p_ = 0, a_ = 0, b_ = 0, gamma_ = 0;
  MomentFn moment_fn_;
  SamplerFn sampler_;
  std::string label_;

  // lazily filled moment table for the truncated-exponential family
  // (backward recurrence is stable; forward is not)
  struct MomentCache {
    std::mutex mu;
    std::vector<double> values;  // values[j] = E[X^{j+1}]
  };
  std::shared_ptr<MomentCache> cache_;

  double truncexp_moment(long j) const;
};

}  // namespace catastro

#endif
