#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "pluri/azukawa.hpp"
#include "pluri/gauge.hpp"
#include "pluri/subharmonic_expr.hpp"

namespace pluri {

/// Parameter disc {|t - center| <= radius} of a domain family.
struct ParamDisc {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
      fail(ErrorKind::construction, "param_disc radius must be positive and finite");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
      fail(ErrorKind::construction, "param_disc center must be finite");
  }

  bool contains(Complex t) const { return std::abs(t - center) <= radius * (1.0 + 1e-12); }
};

/// A variation t -> Omega_t of domains with a distinguished pole:
///  - balanced_scaled:   h_t = e^{phi(t)} h, pole 0
///  - balanced_pullback: h_t(z) = h((I + t xi e_1^T) z), pole 0
///  - hartogs_ball:      Omega_t = ball of radius e^{-phi(t)} in C^2, pole (1,0)
///  - fixed_ball:        the constant family B(0,R) with pole w
class DomainFamily {
 public:
  enum class Variant { balanced_scaled, balanced_pullback, hartogs_ball, fixed_ball };

  static DomainFamily balanced_scaled(MinkowskiGauge h, SubharmonicExpr phi, ParamDisc disc) {
    disc.validate();
    DomainFamily f(Variant::balanced_scaled, disc, h.dimension());
    f.gauge_ = std::move(h);
    f.phi_ = std::move(phi);
    f.pole_ = zero_point(f.dim_);
    return f;
  }

  static DomainFamily balanced_pullback(MinkowskiGauge h, CPoint xi, ParamDisc disc) {
    disc.validate();
    check_point(xi, "balanced_pullback xi");
    if (static_cast<int>(xi.size()) != h.dimension())
      fail(ErrorKind::dimension_mismatch, "xi dimension disagrees with the gauge");
    const double reach = (std::abs(disc.center) + disc.radius) * euclid_norm(xi);
    if (!(reach < 1.0))
      fail(ErrorKind::construction,
           "balanced_pullback: |t| * |xi| reaches " + std::to_string(reach) +
               " >= 1 on the parameter disc, I + t M(xi) may degenerate");
    DomainFamily f(Variant::balanced_pullback, disc, h.dimension());
    f.gauge_ = std::move(h);
    f.xi_ = std::move(xi);
    f.pole_ = zero_point(f.dim_);
    return f;
  }

  static DomainFamily hartogs_ball(SubharmonicExpr phi, ParamDisc disc) {
    disc.validate();
    // phi < 0 on the closed disc, checked by sampling center + concentric rings.
    for (int ring = 0; ring <= 4; ++ring) {
      const double rho = disc.radius * ring / 4.0;
      const int nphase = ring == 0 ? 1 : 32;
      for (int k = 0; k < nphase; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / nphase;
        const Complex t = disc.center + Complex{rho * std::cos(a), rho * std::sin(a)};
        const double v = phi(t);
        if (!(v < 0.0))
          fail(ErrorKind::construction, "hartogs_ball: phi(t) = " + std::to_string(v) +
                                            " is not negative at t = (" + std::to_string(t.real()) + ", " +
                                            std::to_string(t.imag()) + ")");
      }
    }
    DomainFamily f(Variant::hartogs_ball, disc, 2);
    f.phi_ = std::move(phi);
    f.pole_ = CPoint{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    return f;
  }

  static DomainFamily fixed_ball(double radius, CPoint w, ParamDisc disc) {
    disc.validate();
    if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::construction, "ball radius must be positive");
    check_point(w, "fixed_ball pole");
    if (!(euclid_norm(w) < radius)) fail(ErrorKind::construction, "fixed_ball: pole must lie inside the ball");
    DomainFamily f(Variant::fixed_ball, disc, static_cast<int>(w.size()));
    f.radius_ = radius;
    f.pole_ = std::move(w);
    return f;
  }

  Variant variant() const noexcept { return variant_; }
  int dimension() const noexcept { return dim_; }
  const ParamDisc& param_disc() const noexcept { return disc_; }
  const CPoint& pole() const noexcept { return pole_; }
  bool balanced() const noexcept {
    return variant_ == Variant::balanced_scaled || variant_ == Variant::balanced_pullback;
  }

  /// Gauge of the fiber Omega_t (balanced variants only).
  MinkowskiGauge fiber_gauge(Complex t) const {
    require_in_disc(t);
    switch (variant_) {
      case Variant::balanced_scaled:
        return MinkowskiGauge::scale(*gauge_, std::exp((*phi_)(t)));
      case Variant::balanced_pullback:
        return MinkowskiGauge::pullback(*gauge_, ComplexMatrix::one_plus_rank_one_first_column(t, *xi_));
      default:
        fail(ErrorKind::unsupported, "fiber_gauge: this family variant is not balanced");
    }
  }

  GreenEvaluator green_at(Complex t) const {
    require_in_disc(t);
    switch (variant_) {
      case Variant::balanced_scaled:
      case Variant::balanced_pullback:
        return GreenEvaluator::balanced(fiber_gauge(t));
      case Variant::hartogs_ball:
        return GreenEvaluator::ball(std::exp(-(*phi_)(t)), pole_);
      case Variant::fixed_ball:
        return GreenEvaluator::ball(radius_, pole_);
    }
    fail(ErrorKind::construction, "corrupt family variant");
  }

  AzukawaEvaluator azukawa_at(Complex t) const {
    require_in_disc(t);
    switch (variant_) {
      case Variant::balanced_scaled:
      case Variant::balanced_pullback:
        return AzukawaEvaluator::balanced_closed_form(fiber_gauge(t));
      case Variant::hartogs_ball:
        return AzukawaEvaluator::hartogs_family(*phi_, t);
      case Variant::fixed_ball:
        return AzukawaEvaluator::ball_closed_form(radius_, pole_);
    }
    fail(ErrorKind::construction, "corrupt family variant");
  }

  bool member(Complex t, const CPoint& z) const {
    require_in_disc(t);
    switch (variant_) {
      case Variant::balanced_scaled:
      case Variant::balanced_pullback:
        return fiber_gauge(t)(z) < 1.0;
      case Variant::hartogs_ball:
        return euclid_norm(z) < std::exp(-(*phi_)(t));
      case Variant::fixed_ball:
        return euclid_norm(z) < radius_;
    }
    fail(ErrorKind::construction, "corrupt family variant");
  }

  /// phi(t) for the variants that carry a weight.
  double weight(Complex t) const {
    if (!phi_) fail(ErrorKind::unsupported, "this family variant has no weight phi");
    return (*phi_)(t);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["param_disc"] = {{"center", {disc_.center.real(), disc_.center.imag()}}, {"radius", disc_.radius}};
    switch (variant_) {
      case Variant::balanced_scaled:
        j["variant"] = "balanced_scaled";
        j["gauge"] = gauge_->to_json();
        j["phi"] = phi_->to_json();
        break;
      case Variant::balanced_pullback: {
        j["variant"] = "balanced_pullback";
        j["gauge"] = gauge_->to_json();
        nlohmann::json xi = nlohmann::json::array();
        for (const Complex& c : *xi_) xi.push_back({c.real(), c.imag()});
        j["xi"] = std::move(xi);
        break;
      }
      case Variant::hartogs_ball:
        j["variant"] = "hartogs_ball";
        j["phi"] = phi_->to_json();
        break;
      case Variant::fixed_ball: {
        j["variant"] = "fixed_ball";
        j["radius"] = radius_;
        nlohmann::json w = nlohmann::json::array();
        for (const Complex& c : pole_) w.push_back({c.real(), c.imag()});
        j["pole"] = std::move(w);
        break;
      }
    }
    return j;
  }

  static DomainFamily from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(ErrorKind::config, "family: expected a JSON object");
    auto need = [&](const char* field) -> const nlohmann::json& {
      if (!j.contains(field)) fail(ErrorKind::config, std::string("family: missing field \"") + field + "\"");
      return j.at(field);
    };
    ParamDisc disc;
    {
      const nlohmann::json& d = need("param_disc");
      if (!d.is_object() || !d.contains("center") || !d.contains("radius"))
        fail(ErrorKind::config, "family.param_disc: expected {\"center\": [re, im], \"radius\": r}");
      const auto& c = d.at("center");
      if (!c.is_array() || c.size() != 2) fail(ErrorKind::config, "family.param_disc.center must be [re, im]");
      disc.center = Complex{c[0].get<double>(), c[1].get<double>()};
      disc.radius = d.at("radius").get<double>();
    }
    const std::string variant = need("variant").get<std::string>();
    if (variant == "balanced_scaled")
      return balanced_scaled(MinkowskiGauge::from_json(need("gauge")), SubharmonicExpr::from_json(need("phi")),
                             disc);
    if (variant == "balanced_pullback") {
      const nlohmann::json& xij = need("xi");
      if (!xij.is_array() || xij.empty()) fail(ErrorKind::config, "family.xi must be a non-empty array of [re, im]");
      CPoint xi;
      for (const auto& e : xij) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::config, "family.xi entries must be [re, im] pairs");
        xi.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
      return balanced_pullback(MinkowskiGauge::from_json(need("gauge")), std::move(xi), disc);
    }
    if (variant == "hartogs_ball") return hartogs_ball(SubharmonicExpr::from_json(need("phi")), disc);
    if (variant == "fixed_ball") {
      const nlohmann::json& wj = need("pole");
      if (!wj.is_array() || wj.empty()) fail(ErrorKind::config, "family.pole must be a non-empty array of [re, im]");
      CPoint w;
      for (const auto& e : wj) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::config, "family.pole entries must be [re, im] pairs");
        w.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
      return fixed_ball(need("radius").get<double>(), std::move(w), disc);
    }
    fail(ErrorKind::config, "family: unknown variant \"" + variant + "\"");
  }

 private:
  DomainFamily(Variant v, ParamDisc disc, int dim) : variant_(v), disc_(disc), dim_(dim) {}

  void require_in_disc(Complex t) const {
    if (!disc_.contains(t))
      fail(ErrorKind::domain, "t = (" + std::to_string(t.real()) + ", " + std::to_string(t.imag()) +
                                  ") lies outside the parameter disc");
  }

  Variant variant_;
  ParamDisc disc_;
  int dim_;
  std::optional<MinkowskiGauge> gauge_;
  std::optional<SubharmonicExpr> phi_;
  std::optional<CPoint> xi_;
  double radius_ = 0.0;
  CPoint pole_;
};

}  // namespace pluri
