#pragma once

#include <string>
#include <vector>

#include "pluri/family.hpp"

namespace pluri {
namespace catalog {

/// Canonical families used by the check subcommands and shipped as JSON under
/// families/. Weights are strictly subharmonic so grid verdicts sit far from
/// the discretization floor.

inline SubharmonicExpr phi_abs_sq_minus_one() { return abs_sq_plus_const(-1.0); }

// |t|^2 + Re t - 1
inline SubharmonicExpr phi_abs_sq_plus_re() {
  return SubharmonicExpr::sum(1.0, abs_sq_plus_const(-1.0), 1.0,
                              SubharmonicExpr::harmonic_re({Complex{0, 0}, Complex{1, 0}}));
}

// 0.5 |t|^2 + 0.5 Im t
inline SubharmonicExpr phi_half_abs_sq_plus_im() {
  return SubharmonicExpr::sum(0.5, SubharmonicExpr::abs_sq({Complex{0, 0}, Complex{1, 0}}), 0.5,
                              SubharmonicExpr::harmonic_im({Complex{0, 0}, Complex{1, 0}}));
}

// |t|^2 + 0.3 Re t^2
inline SubharmonicExpr phi_abs_sq_plus_re_sq() {
  return SubharmonicExpr::sum(1.0, SubharmonicExpr::abs_sq({Complex{0, 0}, Complex{1, 0}}), 0.3,
                              SubharmonicExpr::harmonic_re({Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}));
}

// -|t|^2: deliberately superharmonic, only expressible through the unchecked sum
inline SubharmonicExpr phi_superharmonic() {
  return SubharmonicExpr::sum_unchecked(-1.0, SubharmonicExpr::abs_sq({Complex{0, 0}, Complex{1, 0}}), 0.0,
                                        SubharmonicExpr::constant(0.0));
}

inline ParamDisc default_disc() { return ParamDisc{Complex{0, 0}, 0.6}; }

inline DomainFamily scaled_ellipsoid() {
  return DomainFamily::balanced_scaled(MinkowskiGauge::ellipsoid({2.0, 1.0}), phi_abs_sq_minus_one(),
                                       default_disc());
}

inline DomainFamily scaled_polydisc() {
  return DomainFamily::balanced_scaled(MinkowskiGauge::max_abs(2), phi_abs_sq_plus_re(), default_disc());
}

inline DomainFamily max_pair() {
  MinkowskiGauge h = MinkowskiGauge::max_of(MinkowskiGauge::scale(MinkowskiGauge::ellipsoid({1.0, 1.0}), 0.8),
                                            MinkowskiGauge::scale(MinkowskiGauge::max_abs(2), 1.1));
  return DomainFamily::balanced_scaled(std::move(h), phi_half_abs_sq_plus_im(), default_disc());
}

inline DomainFamily geomean_pair() {
  MinkowskiGauge h =
      MinkowskiGauge::geo_mean(MinkowskiGauge::ellipsoid({1.5, 1.0}), MinkowskiGauge::max_abs(2), 0.4);
  return DomainFamily::balanced_scaled(std::move(h), phi_abs_sq_plus_re_sq(), default_disc());
}

inline DomainFamily pullback_small_shift() {
  return DomainFamily::balanced_pullback(MinkowskiGauge::ellipsoid({1.0, 1.0}),
                                         CPoint{Complex{0.3, 0.0}, Complex{0.2, 0.0}},
                                         ParamDisc{Complex{0, 0}, 0.8});
}

inline DomainFamily hartogs() { return DomainFamily::hartogs_ball(phi_abs_sq_minus_one(), default_disc()); }

inline DomainFamily fixed_ball() {
  return DomainFamily::fixed_ball(1.0, CPoint{Complex{0, 0}, Complex{0, 0}}, default_disc());
}

inline DomainFamily superharmonic_counterexample() {
  return DomainFamily::balanced_scaled(MinkowskiGauge::max_abs(2), phi_superharmonic(), default_disc());
}

/// The five balanced families of the plurisubharmonicity checks.
inline std::vector<std::pair<std::string, DomainFamily>> balanced_five() {
  return {{"scaled-ellipsoid", scaled_ellipsoid()},
          {"scaled-polydisc", scaled_polydisc()},
          {"max-pair", max_pair()},
          {"geomean-pair", geomean_pair()},
          {"pullback", pullback_small_shift()}};
}

inline DomainFamily by_name(const std::string& name) {
  if (name == "scaled-ellipsoid") return scaled_ellipsoid();
  if (name == "scaled-polydisc") return scaled_polydisc();
  if (name == "max-pair") return max_pair();
  if (name == "geomean-pair") return geomean_pair();
  if (name == "pullback") return pullback_small_shift();
  if (name == "hartogs") return hartogs();
  if (name == "fixed-ball") return fixed_ball();
  if (name == "superharmonic-counterexample") return superharmonic_counterexample();
  fail(ErrorKind::config, "unknown catalog family \"" + name + "\"");
}

inline std::vector<std::string> names() {
  return {"scaled-ellipsoid", "scaled-polydisc", "max-pair",  "geomean-pair",
          "pullback",         "hartogs",         "fixed-ball", "superharmonic-counterexample"};
}

}  // namespace catalog
}  // namespace pluri
