#include "catastro/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace catastro::detail {

ProductSeriesSum sum_product_series(const std::function<double(long)>& alpha,
                                    double tol, long j_max) {
  ProductSeriesSum out;
  double b = 1.0;  // running product, b_j after j factors
  double sum = 0.0;
  constexpr int kWindow = 64;
  double window_alpha_max = 0.0;
  double window_c_min = std::numeric_limits<double>::infinity();
  double window_c_max = 0.0;
  int window_fill = 0;
  double last_c = 0.0;

  for (long j = 1; j <= j_max; ++j) {
    double a = alpha(j - 1);
    a = std::clamp(a, 0.0, 1.0);
    b *= a;
    sum += b;
    out.terms = j;
    if (b == 0.0) {  // some alpha_k = 0: all later terms vanish exactly
      out.outcome = ProductSeriesSum::Outcome::Converged;
      out.sum = sum;
      out.bound = 0.0;
      return out;
    }

    double c = (a > 0.0) ? double(j - 1) * (1.0 - a) / a
                         : std::numeric_limits<double>::infinity();
    last_c = c;
    window_alpha_max = std::max(window_alpha_max, a);
    window_c_min = std::min(window_c_min, c);
    window_c_max = std::max(window_c_max, c);
    if (++window_fill < kWindow) continue;

    // geometric regime: factors bounded away from 1
    if (window_alpha_max < 0.999) {
      double tail = b * window_alpha_max / (1.0 - window_alpha_max);
      if (tail < tol) {
        out.outcome = ProductSeriesSum::Outcome::Converged;
        out.sum = sum;
        out.bound = tail;
        return out;
      }
    }
    // terms negligible regardless of the regime details
    if (b < 1e-18 && window_c_min > 1.5) {
      out.outcome = ProductSeriesSum::Outcome::Converged;
      out.sum = sum;
      out.bound = b * double(j) / (window_c_min - 1.0);
      out.heuristic = true;
      return out;
    }
    // Raabe divergence: j(1-a)/a stays below 1 at large j
    if (j >= 4096 && window_c_max < 0.98) {
      out.outcome = ProductSeriesSum::Outcome::Divergent;
      out.sum = sum;
      return out;
    }
    window_alpha_max = 0.0;
    window_c_min = std::numeric_limits<double>::infinity();
    window_c_max = 0.0;
    window_fill = 0;
  }

  // Raabe tail correction at the cap
  if (last_c > 1.02) {
    double correction = b * double(j_max) / (last_c - 1.0);
    out.outcome = ProductSeriesSum::Outcome::Converged;
    out.sum = sum + correction;
    out.bound = std::max(correction / double(j_max) * 16.0, 4.0 * std::abs(correction) / std::sqrt(double(j_max)));
    out.heuristic = true;
    return out;
  }
  if (last_c < 0.98) {
    out.outcome = ProductSeriesSum::Outcome::Divergent;
    out.sum = sum;
    return out;
  }
  out.outcome = ProductSeriesSum::Outcome::Inconclusive;
  out.sum = sum;
  return out;
}

ProductResult infinite_product(const std::function<double(long)>& alpha,
                               double tol, long k_max) {
  ProductResult out;
  double log_acc = 0.0;
  double prev_gap = 1.0;
  constexpr int kWindow = 64;
  double window_rho_max = 0.0;
  double window_kc_min = std::numeric_limits<double>::infinity();
  int window_fill = 0;

  for (long k = 0; k < k_max; ++k) {
    double a = std::clamp(alpha(k), 0.0, 1.0);
    double gap = 1.0 - a;
    out.terms = k + 1;
    if (a <= 0.0) {
      out.outcome = ProductResult::Outcome::DivergesToZero;
      out.log_value = -std::numeric_limits<double>::infinity();
      return out;
    }
    log_acc += std::log(a);

    double rho = (prev_gap > 0.0) ? gap / prev_gap : 0.0;
    prev_gap = gap;
    window_rho_max = std::max(window_rho_max, rho);
    window_kc_min = std::min(window_kc_min, double(k) * gap);
    if (++window_fill < kWindow) continue;

    if (gap == 0.0 || (window_rho_max < 0.999 && gap * window_rho_max / (1.0 - window_rho_max) < tol)) {
      out.outcome = ProductResult::Outcome::Converged;
      out.log_value = log_acc;
      out.log_bound = (gap == 0.0) ? 0.0 : 2.0 * gap * window_rho_max / (1.0 - window_rho_max);
      return out;
    }
    // k * (1-alpha_k) bounded below: harmonic-type divergence of sum(1-alpha)
    if (k >= 4096 && window_kc_min > 0.05) {
      out.outcome = ProductResult::Outcome::DivergesToZero;
      out.log_value = -std::numeric_limits<double>::infinity();
      return out;
    }
    window_rho_max = 0.0;
    window_kc_min = std::numeric_limits<double>::infinity();
    window_fill = 0;
  }
  out.outcome = ProductResult::Outcome::Inconclusive;
  out.log_value = log_acc;
  out.heuristic = true;
  return out;
}

}  // namespace catastro::detail
