#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pluri/catalog.hpp"
#include "pluri/extension.hpp"
#include "pluri/report_io.hpp"
#include "pluri/subharm.hpp"

namespace pluri {

/// Budgets and tolerances for the check subcommands. Everything stochastic
/// derives from `seed`, so a fixed options struct fixes every number in the
/// report.
struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  long long samples = 500'000;
  long long chunk = 1 << 16;
  int nodes = 32;        // theta resolution of t-sweep quadratures
  double tol = 1e-7;     // psh / stencil tolerance for closed forms
  int lines = 64;        // directions per base point in line tests
  int bases = 10;        // base points per family
  int t_mesh = 21;       // nodes per side of parameter grids
  int circle_nodes = 256;

  McConfig mc(std::uint64_t stream) const {
    McConfig m;
    m.samples = samples;
    m.seed = derive_seed(seed, stream);
    m.chunk = chunk;
    return m;
  }
};

struct CheckArtifact {
  std::string filename;
  std::string content;
};

struct CheckReport {
  std::string name;
  std::string statement;
  bool pass = false;
  nlohmann::json details;
  std::vector<CheckArtifact> artifacts;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["check"] = name;
    j["statement"] = statement;
    j["verdict"] = pass ? "pass" : "fail";
    j["details"] = details;
    return j;
  }
};

namespace detail {

/// F(X, t) = log h_t(X) without per-evaluation gauge rebuilding.
inline std::function<double(const CPoint&, Complex)> log_fiber_gauge(const DomainFamily& family) {
  switch (family.variant()) {
    case DomainFamily::Variant::balanced_scaled: {
      const MinkowskiGauge h = family.fiber_gauge(family.param_disc().center);
      // h_t = e^{phi(t)} h with the center fiber as reference:
      // log h_t(X) = phi(t) - phi(center) + log h_center(X)
      const double phi0 = family.weight(family.param_disc().center);
      return [family, h, phi0](const CPoint& X, Complex t) {
        return family.weight(t) - phi0 + std::log(h(X));
      };
    }
    case DomainFamily::Variant::balanced_pullback: {
      // h_t(X) = h(X + t X_1 xi); recover h and xi through the family's fibers
      return [family](const CPoint& X, Complex t) { return std::log(family.fiber_gauge(t)(X)); };
    }
    default:
      fail(ErrorKind::unsupported, "log h_t(X) needs a balanced family");
  }
}

inline std::vector<std::pair<CPoint, Complex>> random_bases(const DomainFamily& family, int count,
                                                            std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xBA5Eull));
  std::vector<std::pair<CPoint, Complex>> bases;
  const ParamDisc disc = family.param_disc();
  while (static_cast<int>(bases.size()) < count) {
    CPoint x = rng.gaussian_point(family.dimension());
    const double nx = euclid_norm(x);
    if (nx < 1e-9) continue;
    // base direction of norm in [0.4, 1.2]
    x = scaled(x, Complex{(0.4 + 0.8 * rng.uniform01()) / nx, 0.0});
    const double rho = 0.5 * disc.radius * std::sqrt(rng.uniform01());
    const double a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    bases.emplace_back(std::move(x), disc.center + Complex{rho * std::cos(a), rho * std::sin(a)});
  }
  return bases;
}

inline std::vector<double> psh_radii(const DomainFamily& family) {
  const double r = family.param_disc().radius;
  return {0.1 * r, 0.2 * r};
}

/// Square inscribed in the parameter disc.
inline GridSpec inscribed_grid(const DomainFamily& family, int mesh) {
  GridSpec g;
  g.center = family.param_disc().center;
  g.halfwidth = family.param_disc().radius / std::sqrt(2.0) * 0.99;
  g.mesh = mesh;
  return g;
}

inline SphericalGrid sweep_sphere(const CheckOptions& opts) {
  int th = opts.nodes;
  if (th % 2) ++th;
  return SphericalGrid::hopf(th, 16, 16);
}

}  // namespace detail

/// Volume variation: -log V(t) must be subharmonic; the Hartogs family also
/// pins quadrature against the closed form sigma_2 e^{-4 phi}(1 - e^{2 phi})^3.
inline CheckReport check_thm13(const DomainFamily& family, const CheckOptions& opts,
                               const std::string& family_name = "family") {
  CheckReport rep;
  rep.name = "thm13";
  rep.statement = "t -> -log V(t) is subharmonic along pseudoconvex variations (indicatrix volume grid test)";

  const VolumeSubharmonicityResult res = volume_subharmonicity_test(
      family, detail::inscribed_grid(family, opts.t_mesh), detail::sweep_sphere(opts), opts.tol);

  rep.pass = res.report.pass;
  rep.details["grid_report"] = res.report.to_json();
  if (res.closed_form_max_rel_gap) {
    rep.details["closed_form_max_rel_gap"] = *res.closed_form_max_rel_gap;
    rep.details["closed_form_tolerance"] = 0.005;
    if (!(*res.closed_form_max_rel_gap <= 0.005)) rep.pass = false;
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(res.table.size());
  for (const VolumePoint& p : res.table)
    rows.push_back({p.t.real(), p.t.imag(), p.volume, p.neg_log_v, p.stencil});
  rep.artifacts.push_back({"thm13_" + family_name + "_volume_grid.csv",
                           to_csv({"t_re", "t_im", "volume", "neg_log_volume", "stencil"}, rows)});
  return rep;
}

/// Balanced variation: (X, t) -> log h_t(X) must be plurisubharmonic.
inline CheckReport check_thm14(const DomainFamily& family, const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "thm14";
  rep.statement = "(X, t) -> log h_t(X) is plurisubharmonic for balanced variations with pole 0";

  const auto F = detail::log_fiber_gauge(family);
  const PshReport res = psh_line_test(
      F, detail::random_bases(family, opts.bases, opts.seed),
      make_line_directions(family.dimension(), opts.lines, opts.seed), detail::psh_radii(family),
      opts.circle_nodes, opts.tol);
  rep.pass = res.pass;
  rep.details["line_report"] = res.to_json();
  return rep;
}

/// Hartogs family: (X, t) -> A(X, t) must be plurisubharmonic even though the
/// fibers are not balanced around the pole (1, 0).
inline CheckReport check_thm15(const DomainFamily& family, const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "thm15";
  rep.statement = "(X, t) -> A(X, t) is plurisubharmonic for the Hartogs ball family with pole (1, 0)";
  if (family.variant() != DomainFamily::Variant::hartogs_ball)
    fail(ErrorKind::config, "thm15 needs a hartogs_ball family");

  auto F = [&family](const CPoint& X, Complex t) {
    const double p = family.weight(t);
    if (!(p < 0.0)) fail(ErrorKind::domain, "phi(t) left the negative range during a line test");
    const double s = 1.0 - std::exp(2.0 * p);
    return p + 0.5 * std::log((std::norm(X[0]) + s * std::norm(X[1])) / (s * s));
  };
  const PshReport res =
      psh_line_test(F, detail::random_bases(family, opts.bases, opts.seed),
                    make_line_directions(2, opts.lines, opts.seed), detail::psh_radii(family),
                    opts.circle_nodes, opts.tol);
  rep.pass = res.pass;
  rep.details["line_report"] = res.to_json();
  return rep;
}

/// Spherical representation of the indicatrix volume, its Monte Carlo
/// cross-check, and the regularized radial identity.
inline CheckReport check_claim21(const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "claim21";
  rep.statement = "V(I) = (1/2n) Int_{S^{2n-1}} e^{-2nA} dS, cross-checked by box MC and the eps-identity";
  rep.pass = true;
  const double sigma2 = unit_ball_volume(2);
  nlohmann::json cases = nlohmann::json::array();

  auto record = [&](const std::string& name, double value, double target, double tolerance, double error) {
    const bool ok = std::abs(value - target) <= tolerance;
    nlohmann::json c;
    c["case"] = name;
    c["value"] = value;
    c["target"] = target;
    c["tolerance"] = tolerance;
    c["error"] = error;
    c["pass"] = ok;
    cases.push_back(std::move(c));
    if (!ok) rep.pass = false;
  };

  // centered unit ball: the constant 1/(2n) is pinned by V = sigma_2
  const AzukawaEvaluator centered = AzukawaEvaluator::ball_closed_form(1.0, zero_point(2));
  const VolumeEstimate vs = indicatrix_volume_spherical(centered, SphericalGrid::hopf(64, 64, 64));
  record("centered_spherical_64^3", vs.value, sigma2, 1e-3 * sigma2, vs.error);
  const VolumeEstimate vm = indicatrix_volume_mc(centered, 1.2, opts.samples * 2, derive_seed(opts.seed, 1));
  record("centered_mc", vm.value, sigma2, 3.0 * vm.error, vm.error);

  // off-center pole (0.5, 0): V = sigma_2 (1 - r^2)^3 = 27 pi^2 / 128
  const CPoint w{Complex{0.5, 0.0}, Complex{0.0, 0.0}};
  const double target_off = sigma2 * std::pow(0.75, 3.0);
  const AzukawaEvaluator off = AzukawaEvaluator::ball_closed_form(1.0, w);
  const VolumeEstimate os = indicatrix_volume_spherical(off, SphericalGrid::hopf(64, 64, 64));
  record("offcenter_spherical", os.value, target_off, 5e-3 * target_off, os.error);
  const VolumeEstimate om = indicatrix_volume_mc(off, 1.0, opts.samples * 2, derive_seed(opts.seed, 2));
  record("offcenter_mc", om.value, target_off, 3.0 * om.error, om.error);

  // sigma_n in n = 1 and n = 3
  const VolumeEstimate v1 =
      indicatrix_volume_spherical(AzukawaEvaluator::ball_closed_form(1.0, zero_point(1)),
                                  SphericalGrid::circle(256));
  record("disc_sigma1", v1.value, unit_ball_volume(1), 1e-10, v1.error);
  const AzukawaEvaluator ell3 = AzukawaEvaluator::balanced_closed_form(
      MinkowskiGauge::ellipsoid({1.2, 1.0, 0.8}));
  const VolumeEstimate v3 = indicatrix_volume_spherical(
      ell3, SphericalGrid::sphere_mc(3, opts.samples, derive_seed(opts.seed, 3)));
  const double target3 = unit_ball_volume(3) * std::pow(1.2 * 1.0 * 0.8, 2.0);
  record("ellipsoid_sigma3_sphere_mc", v3.value, target3, 3.0 * v3.error, v3.error);

  // eps-identity on two distinct evaluators
  nlohmann::json eps_cases = nlohmann::json::array();
  const SphericalGrid eps_grid = SphericalGrid::hopf(64, 32, 32);
  const std::vector<std::pair<std::string, const AzukawaEvaluator*>> evaluators{
      {"ball_centered", &centered}, {"ball_offcenter", &off}};
  int idx = 0;
  for (const auto& [eval_name, A] : evaluators) {
    nlohmann::json per = nlohmann::json::array();
    double prev_shifted = -1.0;
    for (double eps : {1.0, 0.5, 0.25, 0.125}) {
      const EpsilonIdentityResult r =
          epsilon_identity_check(*A, eps, eps_grid, opts.mc(100 + static_cast<std::uint64_t>(idx)));
      const bool ok = std::abs(r.lhs - r.rhs) <= 3.0 * r.lhs_std_error + 1e-3 * std::abs(r.rhs);
      // shrinking eps must not decrease the shifted sphere integral
      const bool monotone = prev_shifted < 0.0 || r.sphere_integral_shifted >= prev_shifted * (1.0 - 1e-12);
      prev_shifted = r.sphere_integral_shifted;
      nlohmann::json c;
      c["eps"] = eps;
      c["lhs"] = r.lhs;
      c["rhs"] = r.rhs;
      c["lhs_std_error"] = r.lhs_std_error;
      c["relative_gap"] = r.relative_gap;
      c["shift"] = r.shift;
      c["pass"] = ok;
      c["monotone_in_eps"] = monotone;
      per.push_back(std::move(c));
      if (!ok || !monotone) rep.pass = false;
      ++idx;
    }
    eps_cases.push_back({{"evaluator", eval_name}, {"steps", per}});
  }

  rep.details["volume_cases"] = std::move(cases);
  rep.details["epsilon_identity"] = std::move(eps_cases);
  return rep;
}

/// Directional-distance variation: t -> -log dist_{z1}(0, boundary of
/// Omega_t) must be subharmonic.
inline CheckReport check_case2(const DomainFamily& family, const CheckOptions& opts,
                               const std::string& family_name = "family") {
  CheckReport rep;
  rep.name = "case2";
  rep.statement = "t -> -log dist_z1(0, boundary of Omega_t) is subharmonic";

  const CPoint origin = zero_point(family.dimension());
  const GridSpec grid = detail::inscribed_grid(family, opts.t_mesh);

  std::vector<std::vector<double>> rows;
  double worst_gauge_gap = 0.0;
  auto f = [&](Complex t) {
    const double dist = directional_distance(family, t, origin, 1);
    const double v = -std::log(dist);
    if (family.balanced()) {
      const double he1 = family.fiber_gauge(t)(unit_axis(family.dimension(), 0));
      worst_gauge_gap = std::max(worst_gauge_gap, std::abs(dist * he1 - 1.0));
    }
    rows.push_back({t.real(), t.imag(), dist, v});
    return v;
  };
  const PshReport res = laplacian_grid_test(f, grid, opts.tol);

  rep.pass = res.pass;
  rep.details["grid_report"] = res.to_json();
  if (family.balanced()) {
    rep.details["max_deviation_from_inverse_gauge"] = worst_gauge_gap;
    if (!(worst_gauge_gap <= 1e-8)) rep.pass = false;
  }
  rep.artifacts.push_back({"case2_" + family_name + "_distance_grid.csv",
                           to_csv({"t_re", "t_im", "distance", "neg_log_distance"}, rows)});
  return rep;
}

/// Scaled sublevel masses e^{-nt} Vol({g < t/2}) stay below V(I) and approach
/// it; exact constancy for the centered pole.
inline CheckReport check_lemma54(const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "lemma54";
  rep.statement = "e^{-nt} Vol({g < t/2}) is bounded by V(I) as t -> -infinity (k = n scaling)";
  rep.pass = true;
  const double sigma2 = unit_ball_volume(2);
  const std::vector<double> ts{-4.0, -6.0, -8.0, -10.0};
  nlohmann::json poles = nlohmann::json::array();
  std::vector<std::vector<double>> rows;

  int stream = 0;
  for (double r : {0.0, 0.5}) {
    const CPoint w{Complex{r, 0.0}, Complex{0.0, 0.0}};
    const double v_target = sigma2 * std::pow(1.0 - r * r, 3.0);
    const std::vector<SublevelMassPoint> series =
        sublevel_mass_limit(1.0, w, ts, opts.mc(200 + static_cast<std::uint64_t>(stream++)));

    bool ok = true;
    double prev_dist = -1.0, prev_err = 0.0;
    for (const SublevelMassPoint& p : series) {
      rows.push_back({r, p.t, p.scaled_mass, p.std_error, p.flagged ? 1.0 : 0.0});
      if (p.flagged) ok = false;
      if (!(p.scaled_mass <= v_target * 1.05 + 3.0 * p.std_error)) ok = false;
      if (r == 0.0) {
        // exact scaling for the centered pole: every point equals sigma_2 to MC error
        if (!(std::abs(p.scaled_mass - sigma2) <= 3.0 * p.std_error)) ok = false;
      } else {
        const double dist = std::abs(p.scaled_mass - v_target);
        if (prev_dist >= 0.0 && !(dist <= prev_dist + 3.0 * (p.std_error + prev_err))) ok = false;
        prev_dist = dist;
        prev_err = p.std_error;
      }
    }
    const SublevelMassPoint& deepest = series.back();
    if (r > 0.0 && !(std::abs(deepest.scaled_mass - v_target) <= 0.05 * v_target)) ok = false;
    nlohmann::json pj;
    pj["pole_r"] = r;
    pj["indicatrix_volume"] = v_target;
    pj["deepest_scaled_mass"] = deepest.scaled_mass;
    pj["pass"] = ok;
    poles.push_back(std::move(pj));
    if (!ok) rep.pass = false;
  }

  rep.details["poles"] = std::move(poles);
  rep.artifacts.push_back(
      {"lemma54_series.csv", to_csv({"pole_r", "t", "scaled_mass", "std_error", "flagged"}, rows)});
  return rep;
}

/// Minimal extension norm vs indicatrix volume vs Robin-type bound on ball
/// instances.
inline CheckReport check_thm53(const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "thm53";
  rep.statement = "minimal extension norm <= V(I) <= sigma_n e^{nB(w)}; V(I) improves the Robin-type bound";
  rep.pass = true;
  const double sigma2 = unit_ball_volume(2);
  const SphericalGrid sphere = SphericalGrid::hopf(64, 32, 32);
  nlohmann::json instances = nlohmann::json::array();
  std::vector<std::vector<double>> rows;

  int stream = 0;
  for (double r : {0.0, 0.25, 0.5, 0.8}) {
    const CPoint w{Complex{r, 0.0}, Complex{0.0, 0.0}};
    const ExtensionCheckResult res =
        theorem53_check(1.0, w, sphere, opts.mc(300 + static_cast<std::uint64_t>(stream++)));
    bool ok = true;
    // ball instances realize the equality case of the volume bound
    if (!(res.minimal_norm <= res.indicatrix_volume * 1.01)) ok = false;
    if (!(std::abs(res.minimal_norm - res.indicatrix_volume) <= 0.01 * res.indicatrix_volume)) ok = false;
    if (!(std::abs(res.minimal_norm_mc - res.minimal_norm) <= 3.0 * res.minimal_norm_mc_error)) ok = false;
    if (!(res.indicatrix_volume <= res.robin_bound * 1.005)) ok = false;
    if (r == 0.0) {
      if (!(std::abs(res.robin_bound - sigma2) <= 5e-3 * sigma2)) ok = false;
      if (!(std::abs(res.indicatrix_volume - sigma2) <= 5e-3 * sigma2)) ok = false;
    } else if (!(res.indicatrix_volume < res.robin_bound)) {
      ok = false;
    }
    if (r == 0.5 && !(res.robin_bound >= 1.10 * res.indicatrix_volume)) ok = false;

    rows.push_back({r, res.minimal_norm, res.indicatrix_volume, res.robin_bound});
    nlohmann::json ij = res.to_json();
    ij["pass"] = ok;
    instances.push_back(std::move(ij));
    if (!ok) rep.pass = false;
  }

  rep.details["instances"] = std::move(instances);
  rep.artifacts.push_back(
      {"thm53_instances.csv", to_csv({"pole_r", "minimal_norm", "indicatrix_volume", "robin_bound"}, rows)});
  return rep;
}

/// Every check on the canonical catalogue, plus the harness-power probe (the
/// superharmonic counterexample must fail).
inline std::vector<CheckReport> report_all(const CheckOptions& opts) {
  std::vector<CheckReport> reports;

  reports.push_back(check_thm13(catalog::hartogs(), opts, "hartogs"));
  reports.push_back(check_thm13(catalog::fixed_ball(), opts, "fixed-ball"));

  for (const auto& [name, family] : catalog::balanced_five()) {
    CheckReport r = check_thm14(family, opts);
    r.name = "thm14[" + name + "]";
    reports.push_back(std::move(r));
  }

  {
    CheckReport power = check_thm14(catalog::superharmonic_counterexample(), opts);
    CheckReport probe;
    probe.name = "thm14[superharmonic-counterexample]";
    probe.statement = "harness power: the deliberately superharmonic scale must fail the line test";
    probe.pass = !power.pass;
    probe.details["expected"] = "fail";
    probe.details["observed"] = power.pass ? "pass" : "fail";
    probe.details["line_report"] = power.details["line_report"];
    reports.push_back(std::move(probe));
  }

  reports.push_back(check_thm15(catalog::hartogs(), opts));
  reports.push_back(check_claim21(opts));

  for (const auto& [name, family] : catalog::balanced_five()) {
    CheckReport r = check_case2(family, opts, name);
    r.name = "case2[" + name + "]";
    reports.push_back(std::move(r));
  }

  reports.push_back(check_lemma54(opts));
  reports.push_back(check_thm53(opts));
  return reports;
}

}  // namespace pluri
