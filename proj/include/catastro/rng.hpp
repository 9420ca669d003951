#ifndef CATASTRO_RNG_HPP
#define CATASTRO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace catastro {

// Counter-based per-replica stream: the state is derived from
// (seed, stream index) by two rounds of splitmix64 mixing, so stream i
// can be constructed independently of streams 0..i-1. This is what makes
// the Monte Carlo aggregate independent of the worker count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL));
    if (state_ == 0) state_ = 0x2545f4914f6cdd1dULL;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix(z);
  }

  // uniform in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0,1]
  double next_double_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential() { return -std::log(next_double_open0()); }

  bool bernoulli(double p) { return next_double() < p; }

  double normal() {
    // Box-Muller, spare discarded (keeps the stream stateless per draw)
    double u1 = next_double_open0();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Binomial(n, p) by geometric skips over the rarer outcome: O(n*min(p,1-p)+1).
  long binomial(long n, double p) {
    if (n <= 0) return 0;
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    bool flipped = p > 0.5;
    double q = flipped ? 1.0 - p : p;
    double log1mq = std::log1p(-q);
    long count = 0;
    long pos = -1;
    while (true) {
      double u = next_double_open0();
      pos += 1 + static_cast<long>(std::floor(std::log(u) / log1mq));
      if (pos >= n) break;
      ++count;
    }
    return flipped ? n - count : count;
  }

  // L >= 0 with P(L >= k) = x^k; returns -1 for x == 1 (never dies).
  long geometric_floor(double x) {
    if (x <= 0.0) return 0;
    if (x >= 1.0) return -1;
    double u = next_double_open0();
    return static_cast<long>(std::floor(std::log(u) / std::log(x)));
  }

  double gamma(double shape) {
    if (shape < 1.0) {
      double u = next_double_open0();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double_open0();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace catastro

#endif
