#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pluri/gauge.hpp"
#include "pluri/mc.hpp"
#include "pluri/point.hpp"
#include "pluri/volume_estimate.hpp"

namespace pluri {

/// The ball automorphism T_a(z) = (a - P_a z - sqrt(1-|a|^2) Q_a z) / (1 - <z,a>)
/// on the unit ball of C^n; P_a projects onto C*a, Q_a onto its complement.
/// It is an involution with T_a(a) = 0 and T_a(0) = a.
inline CPoint mobius_map(const CPoint& a, const CPoint& z) {
  if (a.size() != z.size()) fail(ErrorKind::dimension_mismatch, "mobius_map: dimensions disagree");
  const double na2 = norm_sq(a);
  if (!(na2 < 1.0)) fail(ErrorKind::domain, "mobius_map: |a| must be < 1");
  if (!(norm_sq(z) < 1.0)) fail(ErrorKind::domain, "mobius_map: |z| must be < 1");
  if (na2 == 0.0) return scaled(z, Complex{-1.0, 0.0});

  const Complex za = inner(z, a);
  const Complex proj = za / na2;
  const double s = std::sqrt(1.0 - na2);
  const Complex denom = Complex{1.0, 0.0} - za;
  CPoint out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Complex p = proj * a[i];          // (P_a z)_i
    const Complex q = z[i] - p;             // (Q_a z)_i
    out[i] = (a[i] - p - s * q) / denom;
  }
  return out;
}

struct GreenValue {
  double value;
  bool boundary;  // |z| landed on the boundary sphere; value is 0 by continuity
};

/// g_{B(0,R),w}(z) = log |T_{w/R}(z/R)|. Boundary points return 0 flagged, so
/// quadrature grids touching the sphere degrade gracefully.
inline GreenValue green_ball_flagged(double R, const CPoint& w, const CPoint& z) {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::parameter, "ball radius must be positive");
  if (w.size() != z.size()) fail(ErrorKind::dimension_mismatch, "green_ball: dimensions disagree");
  const double nw = euclid_norm(w);
  if (!(nw < R)) fail(ErrorKind::domain, "green_ball: pole must lie strictly inside the ball");
  const double nz = euclid_norm(z);
  if (nz > R * (1.0 + 1e-12))
    fail(ErrorKind::domain, "green_ball: point outside the closed ball, |z| = " + std::to_string(nz) +
                                " > R = " + std::to_string(R));
  if (std::abs(nz - R) <= 1e-12 * R) return {0.0, true};
  const double inv_r = 1.0 / R;
  return {std::log(euclid_norm(mobius_map(scaled(w, inv_r), scaled(z, inv_r)))), false};
}

inline double green_ball(double R, const CPoint& w, const CPoint& z) {
  return green_ball_flagged(R, w, z).value;
}

/// g_{Omega,0} = log h for a balanced pseudoconvex domain {h < 1}.
inline double green_balanced(const MinkowskiGauge& h, const CPoint& z) {
  const double hv = h(z);
  if (!(hv < 1.0))
    fail(ErrorKind::domain, "green_balanced: point outside the domain, gauge value " + std::to_string(hv));
  return std::log(hv);
}

/// Pluricomplex Green function with a closed-form source: a ball with an
/// arbitrary interior pole, or a balanced domain with pole 0. Immutable.
class GreenEvaluator {
 public:
  static GreenEvaluator ball(double R, CPoint w) {
    if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::parameter, "ball radius must be positive");
    check_point(w, "GreenEvaluator::ball pole");
    if (!(euclid_norm(w) < R)) fail(ErrorKind::domain, "pole must lie strictly inside the ball");
    GreenEvaluator g;
    g.radius_ = R;
    g.pole_ = std::move(w);
    return g;
  }

  static GreenEvaluator balanced(MinkowskiGauge h) {
    GreenEvaluator g;
    g.pole_ = zero_point(h.dimension());
    g.gauge_ = std::move(h);
    return g;
  }

  double operator()(const CPoint& z) const {
    return gauge_ ? green_balanced(*gauge_, z) : green_ball(radius_, pole_, z);
  }

  GreenValue eval_flagged(const CPoint& z) const {
    if (gauge_) return {green_balanced(*gauge_, z), false};
    return green_ball_flagged(radius_, pole_, z);
  }

  bool contains(const CPoint& z) const {
    if (gauge_) return (*gauge_)(z) < 1.0;
    return euclid_norm(z) < radius_;
  }

  int dimension() const noexcept { return static_cast<int>(pole_.size()); }
  const CPoint& pole() const noexcept { return pole_; }
  bool is_ball() const noexcept { return !gauge_.has_value(); }
  double ball_radius() const noexcept { return radius_; }
  const MinkowskiGauge* gauge() const noexcept { return gauge_ ? &*gauge_ : nullptr; }

  /// Radius of a centered ball containing the whole domain.
  double domain_bounding_radius() const {
    return gauge_ ? gauge_->bounding_radius() : radius_;
  }

 private:
  GreenEvaluator() = default;
  std::optional<MinkowskiGauge> gauge_;
  double radius_ = 0.0;
  CPoint pole_;
};

namespace detail {

/// Halfwidth (in pole-centered coordinates scaled by e^{t/2}) of a box that
/// provably contains {g < t/2}. Balanced sources are exact; ball sources use
/// |T_a(u)| >= sqrt(1-|a|^2)|u-a|/2 tightened by a seeded directional scan.
inline double sublevel_box_halfwidth(const GreenEvaluator& g, double t, std::uint64_t seed) {
  const double level = t / 2.0;
  const double lam = std::exp(level);
  const int n = g.dimension();

  if (!g.is_ball()) return g.gauge()->bounding_radius() * (1.0 + 1e-9);

  const double R = g.ball_radius();
  const double r = euclid_norm(g.pole()) / R;
  const double rigorous = 2.0 * R / std::sqrt(1.0 - r * r);

  // Directional scan: for each direction the first crossing of g = t/2 along
  // the ray from the pole, found by bisection on a bracket that the rigorous
  // bound (capped at the domain boundary) guarantees.
  double scan = 0.0;
  Rng rng(derive_seed(seed, 0x5CA11ull));
  std::vector<CPoint> dirs;
  for (int j = 0; j < n; ++j) {
    for (const Complex c : {Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1}})
      dirs.push_back(scaled(unit_axis(n, j), c));
  }
  for (int k = 0; k < 256; ++k) dirs.push_back(rng.sphere_point(n));

  for (const CPoint& d : dirs) {
    // distance from the pole to the sphere along d:
    // |w + rho d|^2 = rho^2 + 2 rho Re<d,w> + |w|^2 = R^2
    const double beta = inner(d, g.pole()).real();
    const double c0 = norm_sq(g.pole()) - R * R;
    const double rho_boundary = -beta + std::sqrt(beta * beta - c0);
    double hi = std::min(lam * rigorous, rho_boundary * (1.0 - 1e-12));
    if (!(hi > 0.0)) continue;
    if (g(axpy(g.pole(), Complex{hi, 0}, d)) < level) {
      // crossing sits essentially at the domain boundary in this direction
      scan = std::max(scan, rho_boundary);
      continue;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(axpy(g.pole(), Complex{mid, 0}, d)) < level)
        lo = mid;
      else
        hi = mid;
    }
    scan = std::max(scan, hi);
  }
  const double scanned = 1.15 * scan / lam;
  return std::min(rigorous, std::max(scanned, 1e-6));
}

}  // namespace detail

/// Monte Carlo volume of the sublevel set {z : g(z) < t/2}, t < 0.
/// Hit-or-miss in a pole-centered box scaled by e^{t/2}, so deep sublevels
/// (volume ~ e^{nt}) keep a healthy hit rate. Deterministic under the config.
inline VolumeEstimate sublevel_volume(const GreenEvaluator& g, double t, const McConfig& mc) {
  if (!(t < 0.0)) fail(ErrorKind::parameter, "sublevel_volume: t must be negative");
  mc.validate();
  const int n = g.dimension();
  const double level = t / 2.0;
  const double lam = std::exp(level);
  const double b = detail::sublevel_box_halfwidth(g, t, mc.seed);

  const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long count, MeanAccumulator& a) {
    for (long long i = 0; i < count; ++i) {
      const CPoint y = rng.box_point(n, b);
      const CPoint z = axpy(g.pole(), Complex{lam, 0.0}, y);
      bool hit = false;
      if (g.contains(z)) hit = g(z) < level;
      a.add(hit ? 1.0 : 0.0);
    }
  });

  const double cell = std::pow(2.0 * b * lam, 2.0 * n);
  VolumeEstimate est;
  est.value = cell * acc.mean();
  est.error = cell * acc.std_error();
  est.method = VolumeEstimate::Method::montecarlo;
  est.count = acc.count;
  est.seed = mc.seed;
  return est;
}

}  // namespace pluri
