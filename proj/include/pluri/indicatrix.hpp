#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pluri/azukawa.hpp"
#include "pluri/mc.hpp"
#include "pluri/volume_estimate.hpp"

namespace pluri {

/// Integration rule over the unit sphere S^{2n-1}:
///  - n = 1: uniform (trapezoid) rule on the circle;
///  - n = 2: Hopf coordinates X = (cos th e^{i a}, sin th e^{i b}) with
///    dS = sin th cos th dth da db, composite Simpson in th and trapezoid in
///    the periodic angles;
///  - any n: seeded Monte Carlo with normalized Gaussian directions.
class SphericalGrid {
 public:
  static SphericalGrid circle(int nodes) {
    if (nodes < 4) fail(ErrorKind::parameter, "circle rule needs at least 4 nodes");
    SphericalGrid g;
    g.dim_ = 1;
    g.kind_ = Kind::circle;
    g.n_xi1_ = nodes;
    return g;
  }

  static SphericalGrid hopf(int theta_intervals, int n_xi1, int n_xi2) {
    if (theta_intervals < 2 || theta_intervals % 2 != 0)
      fail(ErrorKind::parameter, "hopf rule needs an even number of theta intervals, >= 2");
    if (n_xi1 < 2 || n_xi2 < 2) fail(ErrorKind::parameter, "hopf rule needs >= 2 nodes per angle");
    SphericalGrid g;
    g.dim_ = 2;
    g.kind_ = Kind::hopf;
    g.n_theta_ = theta_intervals;
    g.n_xi1_ = n_xi1;
    g.n_xi2_ = n_xi2;
    return g;
  }

  static SphericalGrid sphere_mc(int dim, long long samples, std::uint64_t seed) {
    if (dim < 1) fail(ErrorKind::parameter, "sphere dimension must be >= 1");
    if (samples <= 0) fail(ErrorKind::parameter, "sphere_mc needs a positive sample count");
    SphericalGrid g;
    g.dim_ = dim;
    g.kind_ = Kind::mc;
    g.samples_ = samples;
    g.seed_ = seed;
    return g;
  }

  /// Reasonable deterministic default for a given dimension ("nodes" is the
  /// per-axis resolution, the 64 of a "64^3 grid").
  static SphericalGrid for_dimension(int dim, int nodes, std::uint64_t seed = kDefaultSeed) {
    if (dim == 1) return circle(std::max(nodes, 16));
    if (dim == 2) return hopf(nodes % 2 ? nodes + 1 : nodes, nodes, nodes);
    return sphere_mc(dim, static_cast<long long>(nodes) * nodes * nodes, seed);
  }

  int dimension() const noexcept { return dim_; }
  bool stochastic() const noexcept { return kind_ == Kind::mc; }
  std::uint64_t seed() const noexcept { return seed_; }

  long long node_count() const noexcept {
    switch (kind_) {
      case Kind::circle: return n_xi1_;
      case Kind::hopf: return static_cast<long long>(n_theta_ + 1) * n_xi1_ * n_xi2_;
      case Kind::mc: return samples_;
    }
    return 0;
  }

  struct Integral {
    double value;
    double std_error;  // 0 for deterministic rules
  };

  /// Integral of f over S^{2n-1} with the surface measure dS.
  Integral integrate(const std::function<double(const CPoint&)>& f) const {
    switch (kind_) {
      case Kind::circle: {
        double sum = 0.0;
        const double h = 2.0 * kPi / n_xi1_;
        CPoint x(1);
        for (int k = 0; k < n_xi1_; ++k) {
          const double a = h * k;
          x[0] = Complex{std::cos(a), std::sin(a)};
          sum += f(x);
        }
        return {sum * h, 0.0};
      }
      case Kind::hopf: {
        const double ht = (kPi / 2.0) / n_theta_;
        const double h1 = 2.0 * kPi / n_xi1_;
        const double h2 = 2.0 * kPi / n_xi2_;
        double total = 0.0;
        CPoint x(2);
        for (int j = 0; j <= n_theta_; ++j) {
          const double th = ht * j;
          const double ct = std::cos(th), st = std::sin(th);
          double simpson = (j == 0 || j == n_theta_) ? 1.0 : (j % 2 ? 4.0 : 2.0);
          double slice = 0.0;
          for (int k = 0; k < n_xi1_; ++k) {
            const double a = h1 * k;
            const Complex e1{std::cos(a), std::sin(a)};
            for (int l = 0; l < n_xi2_; ++l) {
              const double b = h2 * l;
              x[0] = ct * e1;
              x[1] = st * Complex{std::cos(b), std::sin(b)};
              slice += f(x);
            }
          }
          total += simpson * (ht / 3.0) * st * ct * slice * h1 * h2;
        }
        return {total, 0.0};
      }
      case Kind::mc: {
        McConfig mc;
        mc.samples = samples_;
        mc.seed = seed_;
        const int n = dim_;
        const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long count, MeanAccumulator& a) {
          for (long long i = 0; i < count; ++i) a.add(f(rng.sphere_point(n)));
        });
        const double area = unit_sphere_area(n);
        return {area * acc.mean(), area * acc.std_error()};
      }
    }
    fail(ErrorKind::construction, "corrupt spherical grid");
  }

  /// Extremum of f over the rule's node set (same seeded stream for MC).
  double extremum(const std::function<double(const CPoint&)>& f, bool maximum) const {
    double best = maximum ? -1e308 : 1e308;
    for_each_node([&](const CPoint& x) {
      const double v = f(x);
      best = maximum ? std::max(best, v) : std::min(best, v);
    });
    return best;
  }

  /// Rule with roughly half the resolution in every direction; used to attach
  /// a refinement-style error estimate to quadrature volumes.
  SphericalGrid coarsened() const {
    switch (kind_) {
      case Kind::circle: return circle(std::max(4, n_xi1_ / 2));
      case Kind::hopf: {
        int t = std::max(2, n_theta_ / 2);
        if (t % 2) ++t;
        return hopf(t, std::max(2, n_xi1_ / 2), std::max(2, n_xi2_ / 2));
      }
      case Kind::mc: return sphere_mc(dim_, std::max<long long>(1, samples_ / 2), derive_seed(seed_, 1));
    }
    fail(ErrorKind::construction, "corrupt spherical grid");
  }

  void for_each_node(const std::function<void(const CPoint&)>& visit) const {
    switch (kind_) {
      case Kind::circle: {
        CPoint x(1);
        for (int k = 0; k < n_xi1_; ++k) {
          const double a = 2.0 * kPi * k / n_xi1_;
          x[0] = Complex{std::cos(a), std::sin(a)};
          visit(x);
        }
        return;
      }
      case Kind::hopf: {
        CPoint x(2);
        for (int j = 0; j <= n_theta_; ++j) {
          const double th = (kPi / 2.0) * j / n_theta_;
          for (int k = 0; k < n_xi1_; ++k) {
            const double a = 2.0 * kPi * k / n_xi1_;
            for (int l = 0; l < n_xi2_; ++l) {
              const double b = 2.0 * kPi * l / n_xi2_;
              x[0] = std::cos(th) * Complex{std::cos(a), std::sin(a)};
              x[1] = std::sin(th) * Complex{std::cos(b), std::sin(b)};
              visit(x);
            }
          }
        }
        return;
      }
      case Kind::mc: {
        Rng rng(derive_seed(seed_, 0));
        for (long long i = 0; i < samples_; ++i) visit(rng.sphere_point(dim_));
        return;
      }
    }
  }

 private:
  enum class Kind { circle, hopf, mc };
  static constexpr double kPi = 3.14159265358979323846;

  SphericalGrid() = default;

  int dim_ = 2;
  Kind kind_ = Kind::hopf;
  int n_theta_ = 0;
  int n_xi1_ = 0;
  int n_xi2_ = 0;
  long long samples_ = 0;
  std::uint64_t seed_ = kDefaultSeed;
};

/// Membership in the Azukawa indicatrix I = {X : A(X) < 0}; 0 always belongs.
inline bool indicatrix_member(const AzukawaEvaluator& A, const CPoint& X) { return A(X) < 0.0; }

namespace detail {
inline void check_direction_value(double a, const CPoint& x) {
  if (!std::isfinite(a))
    fail(ErrorKind::domain,
         "A is not finite on the sphere at direction " + format_point(x) +
             (a < 0 ? " (indicatrix unbounded in this direction)" : ""));
}
}  // namespace detail

/// Claim-style spherical representation of the indicatrix volume:
///   V = (1/2n) * Int_{S^{2n-1}} e^{-2n A(X^)} dS(X^).
/// The 1/(2n) constant is pinned by the radial integral Int_0^{e^{-A}} r^{2n-1} dr
/// and validated by the centered-ball oracle V = sigma_n.
inline VolumeEstimate indicatrix_volume_spherical(const AzukawaEvaluator& A, const SphericalGrid& grid) {
  if (A.dimension() != grid.dimension())
    fail(ErrorKind::dimension_mismatch, "evaluator and grid dimensions disagree");
  const double two_n = 2.0 * A.dimension();
  auto integrand = [&](const CPoint& x) {
    const double a = A(x);
    detail::check_direction_value(a, x);
    return std::exp(-two_n * a);
  };

  const SphericalGrid::Integral fine = grid.integrate(integrand);
  VolumeEstimate est;
  est.value = fine.value / two_n;
  est.method = VolumeEstimate::Method::spherical;
  est.count = grid.node_count();
  if (grid.stochastic()) {
    est.error = fine.std_error / two_n;
    est.seed = grid.seed();
  } else {
    const SphericalGrid::Integral coarse = grid.coarsened().integrate(integrand);
    est.error = std::abs(fine.value - coarse.value) / two_n;
  }
  return est;
}

/// Hit-or-miss indicatrix volume in the box [-halfwidth, halfwidth]^{2n}.
/// Containment is pre-checked via max e^{-A} over a coarse direction set.
inline VolumeEstimate indicatrix_volume_mc(const AzukawaEvaluator& A, double halfwidth, long long samples,
                                           std::uint64_t seed) {
  if (!(halfwidth > 0.0)) fail(ErrorKind::parameter, "box halfwidth must be positive");
  const int n = A.dimension();

  const SphericalGrid coarse = n == 2 ? SphericalGrid::hopf(16, 8, 8)
                                      : (n == 1 ? SphericalGrid::circle(64)
                                                : SphericalGrid::sphere_mc(n, 4096, derive_seed(seed, 0xC0A53ull)));
  double max_radius = 0.0;
  coarse.for_each_node([&](const CPoint& x) {
    const double a = A(x);
    detail::check_direction_value(a, x);
    max_radius = std::max(max_radius, std::exp(-a));
  });
  if (max_radius > halfwidth)
    fail(ErrorKind::parameter, "sampling box too small: the indicatrix needs halfwidth >= " +
                                   std::to_string(max_radius) + ", got " + std::to_string(halfwidth));

  McConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long count, MeanAccumulator& a) {
    for (long long i = 0; i < count; ++i)
      a.add(A(rng.box_point(n, halfwidth)) < 0.0 ? 1.0 : 0.0);
  });

  const double cell = std::pow(2.0 * halfwidth, 2.0 * n);
  VolumeEstimate est;
  est.value = cell * acc.mean();
  est.error = cell * acc.std_error();
  est.method = VolumeEstimate::Method::montecarlo;
  est.count = acc.count;
  est.seed = seed;
  return est;
}

struct EpsilonIdentityResult {
  double lhs;               // ball integral, Monte Carlo (un-shifted normalization)
  double lhs_std_error;
  double rhs;               // (1/eps) * spherical integral (un-shifted normalization)
  double relative_gap;      // |lhs - rhs| / rhs
  double shift;             // constant subtracted from A internally
  double sphere_integral_shifted;  // Int_S e^{-(2n-eps)(A - shift)} dS, for monotonicity checks
};

/// The regularized radial identity
///   Int_{B^{2n}} e^{-(2n-eps) A} dlambda = (1/eps) Int_{S^{2n-1}} e^{-(2n-eps) A(X^)} dS.
/// A is shifted internally by max_sphere(A) + 0.1 so the closed unit ball is
/// relatively compact in the indicatrix; both sides are reported un-shifted.
/// The ball side samples directions uniformly and radii with density
/// (eps/2) r^{eps/2 - 1}: plain uniform sampling would have unbounded
/// variance for eps <= n, this importance scheme keeps every weight bounded.
inline EpsilonIdentityResult epsilon_identity_check(const AzukawaEvaluator& A, double eps,
                                                    const SphericalGrid& grid, const McConfig& mc) {
  const int n = A.dimension();
  const double two_n = 2.0 * n;
  if (!(eps > 0.0 && eps < two_n))
    fail(ErrorKind::parameter, "eps must lie in (0, 2n) = (0, " + std::to_string(two_n) + ")");
  if (grid.dimension() != n) fail(ErrorKind::dimension_mismatch, "evaluator and grid dimensions disagree");
  mc.validate();

  const double shift = grid.extremum([&](const CPoint& x) { return A(x); }, /*maximum=*/true) + 0.1;
  const AzukawaEvaluator shifted = A.shifted(-shift);
  const double p = two_n - eps;

  const SphericalGrid::Integral sphere = grid.integrate([&](const CPoint& x) {
    const double a = shifted(x);
    detail::check_direction_value(a, x);
    return std::exp(-p * a);
  });

  const double area = unit_sphere_area(n);
  const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long count, MeanAccumulator& a) {
    for (long long i = 0; i < count; ++i) {
      const CPoint dir = rng.sphere_point(n);
      const double u = rng.uniform01_open_at_zero();
      const double r = std::pow(u, 2.0 / eps);
      const double av = shifted(scaled(dir, Complex{r, 0.0}));
      // weight r^{2n-1}/density = (2/eps) r^{2n - eps/2}; assembled in logs to
      // survive the tiny radii the importance density produces
      a.add(area * (2.0 / eps) * std::exp(-p * av + (two_n - eps / 2.0) * std::log(r)));
    }
  });

  // A = (A - shift) + shift, so e^{-pA} integrals carry e^{-p shift}
  const double unshift = std::exp(-p * shift);
  EpsilonIdentityResult out;
  out.shift = shift;
  out.sphere_integral_shifted = sphere.value;
  out.rhs = unshift * sphere.value / eps;
  out.lhs = unshift * acc.mean();
  out.lhs_std_error = unshift * acc.std_error();
  out.relative_gap = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

/// Direction-wise boundary radius e^{-A(X^)} over a deterministic grid,
/// for CSV export. Rows are (angles..., radius).
struct DirectionalRadius {
  std::vector<double> angles;  // (theta, xi1, xi2) for n = 2; (angle) for n = 1
  double radius;
};

inline std::vector<DirectionalRadius> boundary_radii(const AzukawaEvaluator& A, int nodes) {
  std::vector<DirectionalRadius> rows;
  if (A.dimension() == 1) {
    CPoint x(1);
    for (int k = 0; k < nodes; ++k) {
      const double a = 2.0 * 3.14159265358979323846 * k / nodes;
      x[0] = Complex{std::cos(a), std::sin(a)};
      rows.push_back({{a}, std::exp(-A(x))});
    }
    return rows;
  }
  if (A.dimension() != 2)
    fail(ErrorKind::unsupported, "boundary radii export is implemented for dimensions 1 and 2");
  CPoint x(2);
  for (int j = 0; j <= nodes; ++j) {
    const double th = (3.14159265358979323846 / 2.0) * j / nodes;
    for (int k = 0; k < nodes; ++k) {
      const double a = 2.0 * 3.14159265358979323846 * k / nodes;
      for (int l = 0; l < nodes; ++l) {
        const double b = 2.0 * 3.14159265358979323846 * l / nodes;
        x[0] = std::cos(th) * Complex{std::cos(a), std::sin(a)};
        x[1] = std::sin(th) * Complex{std::cos(b), std::sin(b)};
        rows.push_back({{th, a, b}, std::exp(-A(x))});
      }
    }
  }
  return rows;
}

}  // namespace pluri
