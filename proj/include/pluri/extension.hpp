#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pluri/azukawa.hpp"
#include "pluri/green.hpp"
#include "pluri/indicatrix.hpp"

namespace pluri {

/// Bergman kernel of the ball B(0, R) in C^n:
///   K(z, w) = (n!/pi^n) R^{-2n} (1 - <z,w>/R^2)^{-(n+1)}.
inline Complex bergman_kernel_ball(double R, const CPoint& z, const CPoint& w) {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::parameter, "ball radius must be positive");
  if (z.size() != w.size()) fail(ErrorKind::dimension_mismatch, "bergman_kernel_ball: dimensions disagree");
  if (!(euclid_norm(z) < R) || !(euclid_norm(w) < R))
    fail(ErrorKind::domain, "bergman_kernel_ball: both points must lie strictly inside the ball");
  const int n = static_cast<int>(z.size());
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  const double pi_n = std::pow(3.14159265358979323846, n);
  const Complex base = Complex{1.0, 0.0} - inner(z, w) / (R * R);
  return factorial / pi_n * std::pow(R, -2.0 * n) * std::pow(base, Complex{-(n + 1.0), 0.0});
}

/// Analytic value of the minimal L^2 norm of an extension of the value 1 at w
/// (weight identically 0): 1/K(w, w).
inline double minimal_extension_norm_analytic(double R, const CPoint& w) {
  return 1.0 / bergman_kernel_ball(R, w, w).real();
}

/// Monte Carlo of Int_B |F|^2 for F = K(., w)/K(w, w).
inline VolumeEstimate minimal_extension_norm_mc(double R, const CPoint& w, const McConfig& mc) {
  mc.validate();
  const int n = static_cast<int>(w.size());
  const double kww = bergman_kernel_ball(R, w, w).real();
  const double ball_vol = unit_ball_volume(n) * std::pow(R, 2.0 * n);

  const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long count, MeanAccumulator& a) {
    for (long long i = 0; i < count; ++i) {
      const CPoint z = scaled(rng.ball_point(n), Complex{R, 0.0});
      const double f = std::abs(bergman_kernel_ball(R, z, w)) / kww;
      a.add(f * f);
    }
  });

  VolumeEstimate est;
  est.value = ball_vol * acc.mean();
  est.error = ball_vol * acc.std_error();
  est.method = VolumeEstimate::Method::montecarlo;
  est.count = acc.count;
  est.seed = mc.seed;
  return est;
}

/// Instance report for the extension-bound comparison: the minimal extension
/// norm, the indicatrix volume, and the Robin-type bound sigma_n e^{n B(w)}
/// with B(w) = -2 min_{|X|=1} A(X) (the best constant at the pole for
/// G = 2 g >= log|z-w|^2 - B).
struct ExtensionCheckResult {
  double R = 1.0;
  CPoint pole;
  double minimal_norm = 0.0;          // analytic, 1/K(w,w)
  double minimal_norm_mc = 0.0;
  double minimal_norm_mc_error = 0.0;
  double indicatrix_volume = 0.0;
  double indicatrix_volume_error = 0.0;
  double robin_constant = 0.0;        // B(w)
  double robin_bound = 0.0;           // sigma_n e^{n B(w)}
  double ratio_norm_to_volume = 0.0;
  double ratio_volume_to_robin = 0.0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["R"] = R;
    nlohmann::json w = nlohmann::json::array();
    for (const Complex& c : pole) w.push_back({c.real(), c.imag()});
    j["pole"] = std::move(w);
    j["minimal_norm"] = minimal_norm;
    j["minimal_norm_mc"] = minimal_norm_mc;
    j["minimal_norm_mc_error"] = minimal_norm_mc_error;
    j["indicatrix_volume"] = indicatrix_volume;
    j["indicatrix_volume_error"] = indicatrix_volume_error;
    j["robin_constant"] = robin_constant;
    j["robin_bound"] = robin_bound;
    j["ratio_norm_to_volume"] = ratio_norm_to_volume;
    j["ratio_volume_to_robin"] = ratio_volume_to_robin;
    return j;
  }
};

/// Evaluates the three quantities of the extension comparison on a ball
/// instance (n = 2: all closed forms available).
inline ExtensionCheckResult theorem53_check(double R, const CPoint& w, const SphericalGrid& sphere,
                                            const McConfig& mc) {
  if (w.size() != 2) fail(ErrorKind::unsupported, "the extension comparison is implemented for n = 2");
  const int n = 2;
  const AzukawaEvaluator A = AzukawaEvaluator::ball_closed_form(R, w);

  ExtensionCheckResult out;
  out.R = R;
  out.pole = w;
  out.minimal_norm = minimal_extension_norm_analytic(R, w);
  const VolumeEstimate mc_norm = minimal_extension_norm_mc(R, w, mc);
  out.minimal_norm_mc = mc_norm.value;
  out.minimal_norm_mc_error = mc_norm.error;

  const VolumeEstimate vol = indicatrix_volume_spherical(A, sphere);
  out.indicatrix_volume = vol.value;
  out.indicatrix_volume_error = vol.error;

  const double min_a = sphere.extremum([&](const CPoint& x) { return A(x); }, /*maximum=*/false);
  out.robin_constant = -2.0 * min_a;
  out.robin_bound = unit_ball_volume(n) * std::exp(n * out.robin_constant);

  out.ratio_norm_to_volume = out.minimal_norm / out.indicatrix_volume;
  out.ratio_volume_to_robin = out.indicatrix_volume / out.robin_bound;
  return out;
}

struct SublevelMassPoint {
  double t;
  double scaled_mass;  // e^{-n t} Vol({g < t/2})
  double std_error;
  bool flagged;        // relative MC error above 10%
};

/// The scaled sublevel-mass series whose limsup the indicatrix volume bounds:
/// e^{-n t} Vol({g_{B(0,R),w} < t/2}) for a decreasing list of t <= -2.
inline std::vector<SublevelMassPoint> sublevel_mass_limit(double R, const CPoint& w,
                                                          const std::vector<double>& ts, const McConfig& mc) {
  const GreenEvaluator g = GreenEvaluator::ball(R, w);
  const double n = static_cast<double>(w.size());
  std::vector<SublevelMassPoint> out;
  out.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    if (!(t <= -2.0)) fail(ErrorKind::parameter, "sublevel_mass_limit: every t must be <= -2");
    const VolumeEstimate ve = sublevel_volume(g, t, mc.with_seed(derive_seed(mc.seed, i)));
    const double factor = std::exp(-n * t);
    const double rel = ve.value > 0.0 ? ve.error / ve.value : 1.0;
    out.push_back({t, factor * ve.value, factor * ve.error, rel > 0.10});
  }
  return out;
}

}  // namespace pluri
