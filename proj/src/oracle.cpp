#include "catastro/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace catastro {

namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// row[j] = C(i,j) * mixed_moment(j, i-j), j = 0..i
void fill_coeff_row(const SurvivalLaw& law, long i, std::vector<long double>& row) {
  row.assign(static_cast<std::size_t>(i) + 1, 0.0L);
  using K = SurvivalLaw::Kind;
  switch (law.kind()) {
    case K::Degenerate: {
      double p = law.p();
      if (p == 0.0) { row[0] = 1.0L; return; }
      if (p == 1.0) { row[static_cast<std::size_t>(i)] = 1.0L; return; }
      // binomial pmf, recurred outward from the mode
      long j0 = std::clamp<long>(static_cast<long>((double(i) + 1.0) * p), 0, i);
      long double logt = std::lgamma(double(i) + 1.0) - std::lgamma(double(j0) + 1.0) -
                         std::lgamma(double(i - j0) + 1.0) +
                         double(j0) * std::log(p) + double(i - j0) * std::log1p(-p);
      long double t0 = std::exp(logt);
      long double odds = static_cast<long double>(p) / (1.0L - static_cast<long double>(p));
      row[static_cast<std::size_t>(j0)] = t0;
      long double t = t0;
      for (long j = j0; j < i; ++j) {
        t *= odds * static_cast<long double>(i - j) / static_cast<long double>(j + 1);
        row[static_cast<std::size_t>(j + 1)] = t;
      }
      t = t0;
      for (long j = j0; j > 0; --j) {
        t *= static_cast<long double>(j) / (odds * static_cast<long double>(i - j + 1));
        row[static_cast<std::size_t>(j - 1)] = t;
      }
      return;
    }
    case K::Beta:
    case K::PowerFunction:
    case K::Uniform: {
      double a = (law.kind() == K::Uniform) ? 1.0 : law.a();
      double b = (law.kind() == K::Beta) ? law.b() : 1.0;
      long double d = std::exp(log_beta(a, b + double(i)) - log_beta(a, b));
      row[0] = d;
      for (long j = 0; j < i; ++j) {
        d *= static_cast<long double>(i - j) / static_cast<long double>(j + 1) *
             (static_cast<long double>(a) + j) /
             (static_cast<long double>(b) + static_cast<long double>(i - j - 1));
        row[static_cast<std::size_t>(j + 1)] = d;
      }
      return;
    }
    default: {
      // generic path: one quadrature per entry; callers keep N modest here
      double lci = std::lgamma(double(i) + 1.0);
      for (long j = 0; j <= i; ++j) {
        double logc = lci - std::lgamma(double(j) + 1.0) - std::lgamma(double(i - j) + 1.0);
        row[static_cast<std::size_t>(j)] = std::exp(logc) * law.mixed_moment(j, i - j);
      }
      return;
    }
  }
}

struct KilledSolve {
  std::vector<long double> tau;  // tau[1..N]; tau[0] = 0
};

KilledSolve solve_killed(double lambda, const SurvivalLaw& law, long N) {
  // propagate tau_k = A_k + B_k tau_1, then close with tau_{N+1} = 0
  std::vector<long double> A(static_cast<std::size_t>(N) + 2, 0.0L);
  std::vector<long double> B(static_cast<std::size_t>(N) + 2, 0.0L);
  A[1] = 0.0L;
  B[1] = 1.0L;
  const long double lam = lambda;
  std::vector<long double> row;
  for (long i = 1; i <= N; ++i) {
    fill_coeff_row(law, i, row);
    long double sa = 0.0L, sb = 0.0L;
    for (long j = 1; j <= i; ++j) {
      sa += row[static_cast<std::size_t>(j)] * A[static_cast<std::size_t>(j)];
      sb += row[static_cast<std::size_t>(j)] * B[static_cast<std::size_t>(j)];
    }
    A[static_cast<std::size_t>(i) + 1] = ((lam + 1.0L) * A[static_cast<std::size_t>(i)] - 1.0L - sa) / lam;
    B[static_cast<std::size_t>(i) + 1] = ((lam + 1.0L) * B[static_cast<std::size_t>(i)] - sb) / lam;
    if (!std::isfinite(static_cast<double>(B[static_cast<std::size_t>(i) + 1])))
      throw std::overflow_error("truncated_kolmogorov: propagation overflowed");
  }
  long double tau1 = -A[static_cast<std::size_t>(N) + 1] / B[static_cast<std::size_t>(N) + 1];
  KilledSolve out;
  out.tau.assign(static_cast<std::size_t>(N) + 1, 0.0L);
  for (long k = 1; k <= N; ++k)
    out.tau[static_cast<std::size_t>(k)] =
        A[static_cast<std::size_t>(k)] + B[static_cast<std::size_t>(k)] * tau1;
  return out;
}

}  // namespace

double brute_force_firework_tail(const RadiusLaw& support_law, int n) {
  if (n < 1) throw std::invalid_argument("brute_force_firework_tail: n must be >= 1");
  if (n == 1) return 1.0;  // origin always informed
  const std::vector<double>& pmf = support_law.support_probs();
  const int K = static_cast<int>(pmf.size());
  const int sites = n - 1;  // sites 0..n-2
  double budget = std::pow(double(K), double(sites));
  if (budget > 1e7)
    throw std::invalid_argument("brute_force_firework_tail: enumeration budget exceeded");

  std::vector<int> r(static_cast<std::size_t>(sites), 0);
  double total = 0.0;
  while (true) {
    // connectivity: does the frontier reach site n-1?
    long frontier = r[0];
    for (int j = 1; j < sites && frontier < n - 1; ++j) {
      if (j > frontier) break;
      frontier = std::max<long>(frontier, j + r[static_cast<std::size_t>(j)]);
    }
    if (frontier >= n - 1) {
      double prob = 1.0;
      for (int j = 0; j < sites; ++j) prob *= pmf[static_cast<std::size_t>(r[static_cast<std::size_t>(j)])];
      total += prob;
    }
    int pos = 0;
    while (pos < sites && ++r[static_cast<std::size_t>(pos)] == K) {
      r[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == sites) break;
  }
  return total;
}

TruncationReport truncated_kolmogorov_tau(double lambda, const SurvivalLaw& law,
                                          int i, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("truncated_kolmogorov_tau: lambda must be > 0");
  if (i < 1) throw std::invalid_argument("truncated_kolmogorov_tau: i must be >= 1");
  if (law.is_point_mass_at_one())
    throw std::invalid_argument("truncated_kolmogorov_tau: law concentrated at 1");
  if (!(tol > 0.0)) throw std::invalid_argument("truncated_kolmogorov_tau: tol must be > 0");

  // long double propagation caps the usable truncation level; see README
  const long N_cap = 1L << 13;
  TruncationReport rep;
  double prev = -1.0;
  for (long N = 64; N <= N_cap; N *= 2) {
    if (i >= N) continue;
    double v;
    try {
      KilledSolve s = solve_killed(lambda, law, N);
      v = static_cast<double>(s.tau[static_cast<std::size_t>(i)]);
    } catch (const std::overflow_error&) {
      break;  // propagation range exhausted; report the best level reached
    }
    rep.N = N;
    rep.value_at_N = v;
    if (prev >= 0.0) {
      rep.successive_delta = std::abs(v - prev);
      if (rep.successive_delta < tol) {
        rep.converged = true;
        return rep;
      }
    }
    prev = v;
  }
  rep.converged = false;
  return rep;
}

std::vector<double> truncated_kolmogorov_solve(double lambda, const SurvivalLaw& law, long N) {
  // Dense Gaussian elimination with partial pivoting. The affine forward
  // substitution used by the production path recovers tau_i for small i but
  // loses the high-index entries to cancellation, so this test hook solves
  // the full truncated system stably instead.
  const auto n = static_cast<std::size_t>(N);
  std::vector<std::vector<long double>> M(n, std::vector<long double>(n, 0.0L));
  std::vector<long double> rhs(n, 1.0L);
  std::vector<long double> row;
  for (long i = 1; i <= N; ++i) {
    fill_coeff_row(law, i, row);
    auto r = static_cast<std::size_t>(i - 1);
    M[r][r] += static_cast<long double>(lambda) + 1.0L;
    if (i < N) M[r][r + 1] -= static_cast<long double>(lambda);  // tau_{N+1} = 0
    for (long j = 1; j <= i; ++j)
      M[r][static_cast<std::size_t>(j - 1)] -= row[static_cast<std::size_t>(j)];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(M[r][col]) > std::abs(M[pivot][col])) pivot = r;
    std::swap(M[col], M[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0.0L) continue;
      long double factor = M[r][col] / M[col][col];
      for (std::size_t c = col; c < n; ++c) M[r][c] -= factor * M[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> out(n + 1, 0.0);
  std::vector<long double> x(n, 0.0L);
  for (std::size_t r = n; r-- > 0;) {
    long double acc = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= M[r][c] * x[c];
    x[r] = acc / M[r][r];
    out[r + 1] = static_cast<double>(x[r]);
  }
  return out;
}

double truncated_kolmogorov_residual(double lambda, const SurvivalLaw& law,
                                     const std::vector<double>& tau) {
  const long N = static_cast<long>(tau.size()) - 1;
  std::vector<long double> row;
  long double worst = 0.0L;
  for (long i = 1; i <= N; ++i) {
    fill_coeff_row(law, i, row);
    long double mix = 0.0L;
    for (long j = 1; j <= i; ++j)
      mix += row[static_cast<std::size_t>(j)] * static_cast<long double>(tau[static_cast<std::size_t>(j)]);
    long double next = (i < N) ? static_cast<long double>(tau[static_cast<std::size_t>(i) + 1]) : 0.0L;
    long double r = (static_cast<long double>(lambda) + 1.0L) * static_cast<long double>(tau[static_cast<std::size_t>(i)]) -
                    1.0L - static_cast<long double>(lambda) * next - mix;
    worst = std::max(worst, std::abs(r));
  }
  return static_cast<double>(worst);
}

}  // namespace catastro
