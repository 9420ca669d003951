#include "catastro/radius_law.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace catastro {

RadiusLaw RadiusLaw::finite_support(std::vector<double> probs) {
  if (probs.empty()) throw std::invalid_argument("finite_support: empty pmf");
  double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("finite_support: probabilities must sum to 1");
  for (double q : probs)
    if (q < 0.0) throw std::invalid_argument("finite_support: negative probability");
  RadiusLaw law;
  law.kind_ = Kind::FiniteSupport;
  law.probs_ = std::move(probs);
  law.cumulative_.resize(law.probs_.size());
  std::partial_sum(law.probs_.begin(), law.probs_.end(), law.cumulative_.begin());
  law.cumulative_.back() = 1.0;
  law.support_bound_ = static_cast<long>(law.probs_.size()) - 1;
  law.label_ = "support";
  return law;
}

RadiusLaw RadiusLaw::geometric_lifetime(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("geometric_lifetime: p must be in [0,1]");
  RadiusLaw law;
  law.kind_ = Kind::GeometricLifetime;
  law.p_ = p;
  law.label_ = "geomlife:p=" + std::to_string(p);
  return law;
}

RadiusLaw RadiusLaw::from_survival_law(SurvivalLaw src) {
  RadiusLaw law;
  law.kind_ = Kind::FromSurvivalLaw;
  law.source_ = std::make_shared<SurvivalLaw>(std::move(src));
  law.label_ = "fromdist:" + law.source_->label();
  return law;
}

RadiusLaw RadiusLaw::effective_cdf(std::function<double(long)> cdf, std::string label) {
  if (!cdf) throw std::invalid_argument("effective_cdf: missing generator");
  RadiusLaw law;
  law.kind_ = Kind::EffectiveCdf;
  law.cdf_fn_ = std::move(cdf);
  law.label_ = std::move(label);
  return law;
}

RadiusLaw RadiusLaw::effective(const RadiusLaw& base, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("effective: lambda must be > 0");
  RadiusLaw copy = base;
  auto cdf = [copy, lambda](long k) { return 1.0 / (1.0 + lambda * (1.0 - copy.cdf(k))); };
  return effective_cdf(cdf, "effective(" + base.label() + ",lambda=" + std::to_string(lambda) + ")");
}

double RadiusLaw::cdf(long k) const {
  if (k < 0) return 0.0;
  switch (kind_) {
    case Kind::FiniteSupport: {
      auto idx = static_cast<std::size_t>(k);
      return idx < cumulative_.size() ? cumulative_[idx] : 1.0;
    }
    case Kind::GeometricLifetime:
      return 1.0 - std::pow(p_, double(k) + 1.0);
    case Kind::FromSurvivalLaw:
      return source_->lifetime_cdf(k);
    case Kind::EffectiveCdf:
      return cdf_fn_(k);
  }
  throw std::logic_error("unreachable");
}

long RadiusLaw::support_bound() const { return support_bound_; }

const std::vector<double>& RadiusLaw::support_probs() const {
  if (kind_ != Kind::FiniteSupport)
    throw std::logic_error("support_probs: law has no finite support representation");
  return probs_;
}

long RadiusLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::FiniteSupport: {
      double u = rng.next_double();
      for (std::size_t k = 0; k < cumulative_.size(); ++k)
        if (u < cumulative_[k]) return static_cast<long>(k);
      return support_bound_;
    }
    case Kind::GeometricLifetime:
      return rng.geometric_floor(p_);
    case Kind::FromSurvivalLaw:
      return rng.geometric_floor(source_->sample(rng));
    case Kind::EffectiveCdf: {
      // inverse-CDF walk; a plateau below u means an infinite draw
      double u = rng.next_double();
      double prev = -1.0;
      long plateau = 0;
      for (long k = 0; k < (1L << 40); ++k) {
        double c = cdf_fn_(k);
        if (u < c) return k;
        plateau = (c - prev <= 1e-15) ? plateau + 1 : 0;
        if (plateau > 4096) return -1;
        prev = c;
      }
      return -1;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace catastro
