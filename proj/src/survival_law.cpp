#include "catastro/survival_law.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace catastro {

namespace {

void require_finite_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::invalid_argument(std::string("invalid law: parameter ") + name +
                                " must be finite and > 0");
}

double integrate01(const std::function<double(double)>& f) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double v = gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 12, 1e-13, &error);
  return v;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

SurvivalLaw SurvivalLaw::degenerate(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("invalid law: degenerate p must be in [0,1]");
  SurvivalLaw law;
  law.kind_ = Kind::Degenerate;
  law.p_ = p;
  law.label_ = "degenerate:p=" + std::to_string(p);
  return law;
}

SurvivalLaw SurvivalLaw::beta(double a, double b) {
  require_finite_positive(a, "a");
  require_finite_positive(b, "b");
  SurvivalLaw law;
  law.kind_ = Kind::Beta;
  law.a_ = a;
  law.b_ = b;
  law.label_ = "beta:a=" + std::to_string(a) + ",b=" + std::to_string(b);
  return law;
}

SurvivalLaw SurvivalLaw::power_function(double a) {
  require_finite_positive(a, "a");
  SurvivalLaw law;
  law.kind_ = Kind::PowerFunction;
  law.a_ = a;
  law.label_ = "power:a=" + std::to_string(a);
  return law;
}

SurvivalLaw SurvivalLaw::uniform() {
  SurvivalLaw law;
  law.kind_ = Kind::Uniform;
  law.label_ = "uniform";
  return law;
}

SurvivalLaw SurvivalLaw::truncated_exponential(double gamma) {
  require_finite_positive(gamma, "gamma");
  SurvivalLaw law;
  law.kind_ = Kind::TruncatedExponential;
  law.gamma_ = gamma;
  law.cache_ = std::make_shared<MomentCache>();
  law.label_ = "truncexp:gamma=" + std::to_string(gamma);
  return law;
}

SurvivalLaw SurvivalLaw::custom(MomentFn moments, SamplerFn sampler, std::string label) {
  if (!moments || !sampler)
    throw std::invalid_argument("invalid law: custom law needs both a moment function and a sampler");
  SurvivalLaw law;
  law.kind_ = Kind::CustomMoments;
  law.moment_fn_ = std::move(moments);
  law.sampler_ = std::move(sampler);
  law.label_ = std::move(label);
  return law;
}

bool SurvivalLaw::is_point_mass_at_one() const {
  return kind_ == Kind::Degenerate && p_ == 1.0;
}

double SurvivalLaw::truncexp_moment(long j) const {
  // I_j = int_0^1 x^j exp(-gamma x) dx, filled by the backward recurrence
  // I_{j-1} = (gamma I_j + exp(-gamma)) / j seeded by quadrature at the top.
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& tab = cache_->values;
  if (static_cast<long>(tab.size()) <= j) {
    long jmax = std::max<long>(2 * j + 16, 1024);
    const double g = gamma_;
    const double eg = std::exp(-g);
    std::vector<double> I(static_cast<std::size_t>(jmax) + 1);
    I[jmax] = integrate01([&](double x) { return std::pow(x, double(jmax)) * std::exp(-g * x); });
    for (long k = jmax; k >= 1; --k) I[k - 1] = (g * I[k] + eg) / double(k);
    const double norm = g / (1.0 - eg);
    tab.assign(I.size(), 0.0);
    for (std::size_t k = 0; k < I.size(); ++k) tab[k] = norm * I[k];
  }
  return tab[static_cast<std::size_t>(j)];
}

double SurvivalLaw::moment(long j) const {
  if (j < 0) throw std::invalid_argument("moment: j must be >= 0");
  if (j == 0) return 1.0;
  switch (kind_) {
    case Kind::Degenerate:
      return std::pow(p_, double(j));
    case Kind::PowerFunction:
      return a_ / (a_ + double(j));
    case Kind::Uniform:
      return 1.0 / (double(j) + 1.0);
    case Kind::Beta:
      // Gamma ratio in log space: Gamma(j+a)Gamma(a+b)/(Gamma(j+a+b)Gamma(a))
      return std::exp(std::lgamma(double(j) + a_) + std::lgamma(a_ + b_) -
                      std::lgamma(double(j) + a_ + b_) - std::lgamma(a_));
    case Kind::TruncatedExponential:
      return truncexp_moment(j);
    case Kind::CustomMoments:
      return moment_fn_(j);
  }
  throw std::logic_error("unreachable");
}

double SurvivalLaw::mixed_moment(long r, long s) const {
  if (r < 0 || s < 0) throw std::invalid_argument("mixed_moment: r,s must be >= 0");
  if (r == 0 && s == 0) return 1.0;
  switch (kind_) {
    case Kind::Degenerate:
      return std::pow(p_, double(r)) * std::pow(1.0 - p_, double(s));
    case Kind::Beta:
      return std::exp(log_beta(a_ + double(r), b_ + double(s)) - log_beta(a_, b_));
    case Kind::PowerFunction:
      return std::exp(log_beta(a_ + double(r), 1.0 + double(s)) - log_beta(a_, 1.0));
    case Kind::Uniform:
      return std::exp(log_beta(1.0 + double(r), 1.0 + double(s)));
    case Kind::TruncatedExponential: {
      const double g = gamma_;
      const double norm = g / (1.0 - std::exp(-g));
      return integrate01([&](double x) {
        return std::pow(x, double(r)) * std::pow(1.0 - x, double(s)) * norm * std::exp(-g * x);
      });
    }
    case Kind::CustomMoments: {
      // binomial expansion of (1-p)^s over the moment sequence
      double sum = 0.0;
      double coeff = 1.0;  // C(s,i) * (-1)^i
      for (long i = 0; i <= s; ++i) {
        sum += coeff * moment(r + i);
        coeff *= -double(s - i) / double(i + 1);
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable");
}

DensityLeftLimit SurvivalLaw::density_left_limit() const {
  DensityLeftLimit out;
  switch (kind_) {
    case Kind::PowerFunction:
      out.kind = DensityLeftLimit::Kind::Finite;
      out.value = a_;
      out.left_differentiable = a_ >= 1.0;
      break;
    case Kind::Uniform:
      out.kind = DensityLeftLimit::Kind::Finite;
      out.value = 1.0;
      out.left_differentiable = true;
      break;
    case Kind::Beta:
      if (b_ > 1.0) {
        out.kind = DensityLeftLimit::Kind::Finite;
        out.value = 0.0;
        out.left_differentiable = b_ >= 2.0;
      } else if (b_ == 1.0) {
        out.kind = DensityLeftLimit::Kind::Finite;
        out.value = a_;
        out.left_differentiable = a_ >= 1.0;
      } else {
        out.kind = DensityLeftLimit::Kind::Infinite;
      }
      break;
    case Kind::TruncatedExponential:
      out.kind = DensityLeftLimit::Kind::Finite;
      out.value = gamma_ / (std::exp(gamma_) - 1.0);
      out.left_differentiable = true;
      break;
    case Kind::Degenerate:
    case Kind::CustomMoments:
      out.kind = DensityLeftLimit::Kind::Undefined;
      break;
  }
  return out;
}

double SurvivalLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::Degenerate:
      return p_;
    case Kind::Uniform:
      return rng.next_double();
    case Kind::PowerFunction:
      return std::pow(rng.next_double_open0(), 1.0 / a_);
    case Kind::Beta:
      return rng.beta(a_, b_);
    case Kind::TruncatedExponential: {
      double u = rng.next_double();
      return -std::log1p(-u * (1.0 - std::exp(-gamma_))) / gamma_;
    }
    case Kind::CustomMoments:
      return sampler_(rng);
  }
  throw std::logic_error("unreachable");
}

double SurvivalLaw::lifetime_cdf(long k) const {
  if (k < 0) throw std::invalid_argument("lifetime_cdf: k must be >= 0");
  return 1.0 - moment(k + 1);
}

}  // namespace catastro
