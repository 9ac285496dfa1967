#include "fedsemi/rng.hpp"

#include <cmath>

#include "fedsemi/errors.hpp"

namespace fedsemi {

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw NumericError("uniform_index: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double RngStream::normal() {
  // u1 in (0, 1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::vector<double> RngStream::normal_vector(std::size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = normal();
  return v;
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw NumericError("gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back.
    double u = 1.0 - uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> RngStream::dirichlet(double alpha, std::size_t k) {
  if (!(alpha > 0.0)) throw NumericError("dirichlet: alpha must be positive");
  std::vector<double> p(k);
  double sum = 0.0;
  for (auto& x : p) {
    x = gamma(alpha);
    sum += x;
  }
  if (sum <= 0.0) {
    // All gammas underflowed (tiny alpha); fall back to a one-hot draw.
    p.assign(k, 0.0);
    p[uniform_index(k)] = 1.0;
    return p;
  }
  for (auto& x : p) x /= sum;
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(a));
  h = splitmix64(h ^ splitmix64(b));
  return h;
}

}  // namespace fedsemi
