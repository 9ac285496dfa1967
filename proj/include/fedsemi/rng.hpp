#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fedsemi {

// Deterministic random stream. The engine (std::mt19937_64) produces a
// bit-exact sequence on every conforming implementation; the distribution
// transforms are hand-rolled here because the std:: distributions are
// implementation-defined and would break cross-host reproducibility.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Box-Muller. Always consumes exactly two uniforms.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::vector<double> normal_vector(std::size_t dim);

  // Gamma(shape, 1) by Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  // Symmetric Dirichlet(alpha * 1_k).
  std::vector<double> dirichlet(double alpha, std::size_t k);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Splitmix64-style mixing of a master seed with stream labels, so each
// (client, round) pair gets an independent stream regardless of scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace fedsemi
