#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pluri/family.hpp"
#include "pluri/indicatrix.hpp"

namespace pluri {

/// One circle-mean measurement: slack = (mean over the circle) - (center value).
/// A subharmonic function keeps slack >= -discretization error; a -inf center
/// makes the sub-mean-value inequality vacuous (slack = +inf).
struct MeanValueReport {
  Complex center;
  double radius;
  double circle_mean;
  double center_value;
  double slack;
  int nodes;
};

inline std::vector<MeanValueReport> circle_mean_test(const std::function<double(Complex)>& f, Complex t0,
                                                     const std::vector<double>& radii, int nodes) {
  if (nodes < 8) fail(ErrorKind::parameter, "circle mean needs at least 8 nodes");
  if (radii.empty()) fail(ErrorKind::parameter, "circle mean needs at least one radius");
  const double center_value = f(t0);
  std::vector<MeanValueReport> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0)) fail(ErrorKind::parameter, "circle radius must be positive");
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double a = 2.0 * 3.14159265358979323846 * k / nodes;
      const double v = f(t0 + Complex{r * std::cos(a), r * std::sin(a)});
      if (v == kNegInfinity)
        fail(ErrorKind::domain, "f = -infinity on a circle node (radius " + std::to_string(r) +
                                    "); choose a different radius");
      if (std::isnan(v)) fail(ErrorKind::domain, "f is NaN on a circle node");
      sum += v;
    }
    const double mean = sum / nodes;
    const double slack = center_value == kNegInfinity ? std::numeric_limits<double>::infinity()
                                                      : mean - center_value;
    out.push_back({t0, r, mean, center_value, slack, nodes});
  }
  return out;
}

/// Worst case of a batch of subharmonicity measurements.
struct PshWitness {
  CPoint base_point;       // empty for pure-t tests
  Complex t{0.0, 0.0};
  CPoint direction_xi;     // empty for grid tests
  Complex direction_tau{0.0, 0.0};
  double radius = 0.0;     // circle radius, or grid spacing for stencil tests

  nlohmann::json to_json() const {
    nlohmann::json j;
    auto point = [](const CPoint& p) {
      nlohmann::json a = nlohmann::json::array();
      for (const Complex& c : p) a.push_back({c.real(), c.imag()});
      return a;
    };
    if (!base_point.empty()) j["base_point"] = point(base_point);
    j["t"] = {t.real(), t.imag()};
    if (!direction_xi.empty()) {
      j["direction_xi"] = point(direction_xi);
      j["direction_tau"] = {direction_tau.real(), direction_tau.imag()};
    }
    j["radius"] = radius;
    return j;
  }
};

struct PshReport {
  bool pass = true;
  double min_slack = std::numeric_limits<double>::infinity();
  PshWitness witness;
  long long tests_run = 0;
  double tolerance = 0.0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["verdict"] = pass ? "pass" : "fail";
    j["min_slack"] = min_slack;
    j["witness"] = witness.to_json();
    j["tests_run"] = tests_run;
    j["tolerance"] = tolerance;
    return j;
  }
};

struct GridSpec {
  Complex center{0.0, 0.0};
  double halfwidth = 0.5;
  int mesh = 21;  // nodes per side

  void validate() const {
    if (!(halfwidth > 0.0)) fail(ErrorKind::parameter, "grid halfwidth must be positive");
    if (mesh < 3) fail(ErrorKind::parameter, "grid needs at least 3 nodes per side");
  }

  double spacing() const { return 2.0 * halfwidth / (mesh - 1); }
  Complex node(int i, int j) const {
    return center + Complex{-halfwidth + i * spacing(), -halfwidth + j * spacing()};
  }
};

namespace detail {

/// Five-point stencil verdict on a precomputed table of values; min stencil is
/// an approximation of the smallest Laplacian on the interior.
inline PshReport stencil_report(const GridSpec& grid, const std::vector<double>& values, double tolerance) {
  const int m = grid.mesh;
  const double h = grid.spacing();
  double scale = 0.0;
  for (double v : values) {
    if (v == kNegInfinity) fail(ErrorKind::domain, "f = -infinity on a grid node");
    if (std::isnan(v)) fail(ErrorKind::domain, "f is NaN on a grid node");
    scale = std::max(scale, std::abs(v));
  }
  PshReport rep;
  rep.tolerance = tolerance;
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * m + j]; };
  for (int i = 1; i + 1 < m; ++i) {
    for (int j = 1; j + 1 < m; ++j) {
      const double stencil =
          (at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1) - 4.0 * at(i, j)) / (h * h);
      ++rep.tests_run;
      if (stencil < rep.min_slack) {
        rep.min_slack = stencil;
        rep.witness = PshWitness{{}, grid.node(i, j), {}, Complex{0, 0}, h};
      }
    }
  }
  rep.pass = rep.min_slack >= -tolerance * std::max(scale, 1e-300);
  return rep;
}

}  // namespace detail

/// Discrete-Laplacian subharmonicity test on a square: pass iff the smallest
/// five-point stencil value stays above -tolerance * max|f|.
inline PshReport laplacian_grid_test(const std::function<double(Complex)>& f, const GridSpec& grid,
                                     double tolerance) {
  grid.validate();
  std::vector<double> values(static_cast<std::size_t>(grid.mesh) * grid.mesh);
  for (int i = 0; i < grid.mesh; ++i)
    for (int j = 0; j < grid.mesh; ++j)
      values[static_cast<std::size_t>(i) * grid.mesh + j] = f(grid.node(i, j));
  return detail::stencil_report(grid, values, tolerance);
}

/// A complex line through (X0, t0): lambda -> (X0 + lambda xi, t0 + lambda tau).
struct LineDirection {
  CPoint xi;
  Complex tau;
};

/// Axis directions plus `count - (n+1)` seeded Gaussian directions, all
/// normalized in C^{n+1}; the pure-t axis comes first.
inline std::vector<LineDirection> make_line_directions(int n, int count, std::uint64_t seed) {
  std::vector<LineDirection> dirs;
  dirs.push_back({zero_point(n), Complex{1.0, 0.0}});
  for (int j = 0; j < n && static_cast<int>(dirs.size()) < count; ++j)
    dirs.push_back({unit_axis(n, j), Complex{0.0, 0.0}});
  Rng rng(derive_seed(seed, 0x11E5ull));
  while (static_cast<int>(dirs.size()) < count) {
    CPoint xi = rng.gaussian_point(n);
    double a, b;
    rng.gaussian_pair(a, b);
    Complex tau{a, b};
    const double norm = std::sqrt(norm_sq(xi) + std::norm(tau));
    if (norm < 1e-12) continue;
    dirs.push_back({scaled(xi, Complex{1.0 / norm, 0.0}), tau / norm});
  }
  return dirs;
}

/// Plurisubharmonicity test of F(X, t) by circle means along complex lines
/// through the given base points.
inline PshReport psh_line_test(const std::function<double(const CPoint&, Complex)>& F,
                               const std::vector<std::pair<CPoint, Complex>>& bases,
                               const std::vector<LineDirection>& directions, const std::vector<double>& radii,
                               int nodes, double tolerance) {
  if (bases.empty() || directions.empty()) fail(ErrorKind::parameter, "psh_line_test needs bases and directions");
  PshReport rep;
  rep.tolerance = tolerance;
  for (const auto& [X0, t0] : bases) {
    for (const LineDirection& d : directions) {
      auto restricted = [&](Complex lambda) { return F(axpy(X0, lambda, d.xi), t0 + lambda * d.tau); };
      std::vector<MeanValueReport> reports;
      try {
        reports = circle_mean_test(restricted, Complex{0.0, 0.0}, radii, nodes);
      } catch (const Error& e) {
        fail(e.kind(), std::string(e.what()) + " [line through base " + format_point(X0) + ", t0 = (" +
                           std::to_string(t0.real()) + ", " + std::to_string(t0.imag()) + ")]");
      }
      for (const MeanValueReport& r : reports) {
        ++rep.tests_run;
        if (r.slack < rep.min_slack) {
          rep.min_slack = r.slack;
          rep.witness = PshWitness{X0, t0, d.xi, d.tau, r.radius};
        }
      }
    }
  }
  rep.pass = rep.min_slack >= -tolerance;
  return rep;
}

/// Distance from p to the fiber boundary along coordinate axis `axis`
/// (1-based): sup{s > 0 : p + (lambda, 0, ..., 0) in Omega_t for all |lambda| < s}.
/// Bisection against the family's membership oracle; for balanced fibers and
/// p = 0 this equals 1/h_t(e_axis) exactly.
inline double directional_distance(const DomainFamily& family, Complex t, const CPoint& p, int axis,
                                   double rel_tol = 1e-10) {
  const int n = family.dimension();
  if (axis < 1 || axis > n) fail(ErrorKind::parameter, "direction index must lie in 1..n");
  if (static_cast<int>(p.size()) != n) fail(ErrorKind::dimension_mismatch, "base point dimension disagrees");
  if (!family.member(t, p)) fail(ErrorKind::domain, "base point lies outside the fiber");
  const CPoint e = unit_axis(n, axis - 1);

  // membership of the whole circle |lambda| = s around p (phase grid; exact
  // for the balanced/ball fibers at p = 0, where membership is phase-free)
  const int phases = 16;
  auto circle_inside = [&](double s) {
    for (int k = 0; k < phases; ++k) {
      const double a = 2.0 * 3.14159265358979323846 * k / phases;
      if (!family.member(t, axpy(p, Complex{s * std::cos(a), s * std::sin(a)}, e))) return false;
    }
    return true;
  };

  // bracket: fibers are bounded, so some finite s is surely outside
  double hi = 1.0;
  double bound = euclid_norm(p) + 1.0;
  switch (family.variant()) {
    case DomainFamily::Variant::balanced_scaled:
    case DomainFamily::Variant::balanced_pullback:
      bound += family.fiber_gauge(t).bounding_radius();
      break;
    case DomainFamily::Variant::hartogs_ball:
      bound += std::exp(-family.weight(t));
      break;
    case DomainFamily::Variant::fixed_ball:
      bound += family.green_at(t).ball_radius();
      break;
  }
  hi = 2.0 * bound;
  double lo = 0.0;
  // first outside radius may sit below hi; scan forward to tighten the bracket
  const int scan = 64;
  const double reach = hi;
  bool bracketed = false;
  for (int k = 1; k <= scan; ++k) {
    const double s = reach * k / scan;
    if (!circle_inside(s)) {
      hi = s;
      lo = reach * (k - 1) / scan;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) fail(ErrorKind::domain, "fiber appears unbounded along the requested axis");
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (circle_inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// One row of the volume-variation table.
struct VolumePoint {
  Complex t;
  double volume;
  double neg_log_v;
  double stencil;  // NaN on the grid border
};

struct VolumeSubharmonicityResult {
  PshReport report;
  std::vector<VolumePoint> table;
  /// For the Hartogs family: worst relative deviation of the quadrature
  /// volume from the closed form sigma_2 e^{-4 phi} (1 - e^{2 phi})^3.
  std::optional<double> closed_form_max_rel_gap;
};

/// Computes V(t) by spherical quadrature over a t-grid and applies the
/// stencil test to -log V(t).
inline VolumeSubharmonicityResult volume_subharmonicity_test(const DomainFamily& family, const GridSpec& tgrid,
                                                             const SphericalGrid& sphere, double tolerance) {
  tgrid.validate();
  const int m = tgrid.mesh;
  std::vector<double> neg_log_v(static_cast<std::size_t>(m) * m);
  std::vector<double> volumes(static_cast<std::size_t>(m) * m);
  double worst_gap = 0.0;
  const double sigma2 = unit_ball_volume(2);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Complex t = tgrid.node(i, j);
      const VolumeEstimate ve = indicatrix_volume_spherical(family.azukawa_at(t), sphere);
      volumes[static_cast<std::size_t>(i) * m + j] = ve.value;
      neg_log_v[static_cast<std::size_t>(i) * m + j] = -std::log(ve.value);
      if (family.variant() == DomainFamily::Variant::hartogs_ball) {
        const double phi = family.weight(t);
        const double closed = sigma2 * std::exp(-4.0 * phi) * std::pow(1.0 - std::exp(2.0 * phi), 3.0);
        worst_gap = std::max(worst_gap, std::abs(ve.value - closed) / closed);
      }
    }
  }

  VolumeSubharmonicityResult out;
  out.report = detail::stencil_report(tgrid, neg_log_v, tolerance);
  if (family.variant() == DomainFamily::Variant::hartogs_ball) out.closed_form_max_rel_gap = worst_gap;

  const double h = tgrid.spacing();
  out.table.reserve(static_cast<std::size_t>(m) * m);
  auto at = [&](int i, int j) { return neg_log_v[static_cast<std::size_t>(i) * m + j]; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double stencil = std::numeric_limits<double>::quiet_NaN();
      if (i > 0 && i + 1 < m && j > 0 && j + 1 < m)
        stencil = (at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1) - 4.0 * at(i, j)) / (h * h);
      out.table.push_back({tgrid.node(i, j), volumes[static_cast<std::size_t>(i) * m + j], at(i, j), stencil});
    }
  }
  return out;
}

}  // namespace pluri
