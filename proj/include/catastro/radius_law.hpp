#ifndef CATASTRO_RADIUS_LAW_HPP
#define CATASTRO_RADIUS_LAW_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "catastro/rng.hpp"
#include "catastro/survival_law.hpp"

namespace catastro {

// An N-valued distribution given by its CDF sequence alpha_k = P(R <= k).
// Represents Firework radii and GIPC lifetimes.
class RadiusLaw {
 public:
  enum class Kind { FiniteSupport, GeometricLifetime, FromSurvivalLaw, EffectiveCdf };

  // probs[k] = P(R = k); must sum to 1 within 1e-12
  static RadiusLaw finite_support(std::vector<double> probs);
  // alpha_k = 1 - p^{k+1}
  static RadiusLaw geometric_lifetime(double p);
  // alpha_k = 1 - E[X^{k+1}], the lifetime law of an individual with
  // nu-distributed survival parameter
  static RadiusLaw from_survival_law(SurvivalLaw law);
  // explicit CDF generator
  static RadiusLaw effective_cdf(std::function<double(long)> cdf, std::string label);
  // per-site maximum radius over a Geometric(1/(1+lambda)) number of
  // base-law draws: alpha_k = 1 / (1 + lambda * (1 - base_cdf(k)))
  static RadiusLaw effective(const RadiusLaw& base, double lambda);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  double cdf(long k) const;  // alpha_k
  // largest k with P(R = k) > 0, or -1 when the support is unbounded
  long support_bound() const;
  const std::vector<double>& support_probs() const;  // FiniteSupport only

  // one draw; -1 encodes an infinite radius/lifetime
  long sample(RngStream& rng) const;

 private:
  RadiusLaw() = default;

  Kind kind_ = Kind::FiniteSupport;
  std::vector<double> probs_;  // FiniteSupport: pmf; cumulative_ caches the CDF
  std::vector<double> cumulative_;
  double p_ = 0;
  std::shared_ptr<SurvivalLaw> source_;
  std::function<double(long)> cdf_fn_;
  long support_bound_ = -1;
  std::string label_;
};

}  // namespace catastro

#endif
