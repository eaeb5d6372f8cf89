#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "pluri/error.hpp"

namespace pluri {

/// A volume with an error bar: quadrature (error = grid-refinement estimate)
/// or Monte Carlo (error = standard error of the hit estimate).
struct VolumeEstimate {
  enum class Method { spherical, montecarlo };

  double value = 0.0;
  double error = 0.0;
  Method method = Method::spherical;
  long long count = 0;  // nodes or samples
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["error"] = error;
    j["method"] = method == Method::spherical ? "spherical" : "montecarlo";
    j[method == Method::spherical ? "nodes" : "samples"] = count;
    if (seed) j["seed"] = *seed;
    return j;
  }
};

/// sigma_n = pi^n / n!, the volume of the unit ball of C^n.
inline double unit_ball_volume(int n) {
  if (n < 1) fail(ErrorKind::parameter, "dimension must be >= 1");
  double v = 1.0;
  for (int k = 1; k <= n; ++k) v *= 3.14159265358979323846 / static_cast<double>(k);
  return v;
}

/// Surface area of S^{2n-1} in C^n: 2 pi^n / (n-1)!.
inline double unit_sphere_area(int n) {
  return 2.0 * static_cast<double>(n) * unit_ball_volume(n);
}

}  // namespace pluri
