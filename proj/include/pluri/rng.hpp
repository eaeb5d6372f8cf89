#pragma once

#include <cmath>
#include <cstdint>

#include "pluri/point.hpp"

namespace pluri {

/// Default seed for every stochastic routine (reports stay reproducible even
/// when the user passes nothing). Hex bytes spell "UKAWA" after the A2.
inline constexpr std::uint64_t kDefaultSeed = 0xA2554B415741ull;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Stateless seed derivation: chunk c of a run with seed s always sees the
/// same stream no matter how the chunks are scheduled across workers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return detail::splitmix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
}

/// Small splitmix64-based generator. Distributions are hand-rolled so results
/// do not depend on the standard library's unspecified algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::splitmix64(state_);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform01_open_at_zero() { return 1.0 - uniform01(); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [-halfwidth, halfwidth).
  double uniform_sym(double halfwidth) { return uniform(-halfwidth, halfwidth); }

  /// One standard Gaussian pair (Box-Muller).
  void gaussian_pair(double& g0, double& g1) {
    const double u = uniform01_open_at_zero();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * 3.14159265358979323846 * v;
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
  }

  /// n independent complex standard Gaussians.
  CPoint gaussian_point(int n) {
    CPoint z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double a, b;
      gaussian_pair(a, b);
      z[static_cast<std::size_t>(i)] = Complex{a, b};
    }
    return z;
  }

  /// Uniform point of the unit sphere S^{2n-1} in C^n.
  CPoint sphere_point(int n) {
    for (;;) {
      CPoint z = gaussian_point(n);
      const double r = euclid_norm(z);
      if (r > 1e-100) return scaled(z, Complex{1.0 / r, 0.0});
    }
  }

  /// Uniform complex point in the box [-halfwidth, halfwidth]^{2n}.
  CPoint box_point(int n, double halfwidth) {
    CPoint z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double re = uniform_sym(halfwidth);
      const double im = uniform_sym(halfwidth);
      z[static_cast<std::size_t>(i)] = Complex{re, im};
    }
    return z;
  }

  /// Uniform point of the closed unit ball of C^n (radial inverse-CDF).
  CPoint ball_point(int n) {
    const double r = std::pow(uniform01_open_at_zero(), 1.0 / (2.0 * n));
    return scaled(sphere_point(n), Complex{r, 0.0});
  }

 private:
  std::uint64_t state_;
};

}  // namespace pluri
