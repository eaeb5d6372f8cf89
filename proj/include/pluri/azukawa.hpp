#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pluri/green.hpp"
#include "pluri/subharmonic_expr.hpp"

namespace pluri {

/// Geometric lambda sequence lambda_k = lambda0 * ratio^k used to chase the
/// directional limit of g(w + lambda X) - log lambda. Order 1 applies one
/// Richardson step (the error of the closed-form sources is linear in lambda).
struct LambdaSchedule {
  double lambda0 = 0.1;
  double ratio = 0.5;
  int count = 16;
  int order = 1;  // 0 = last value, 1 = Richardson on the last pair
  /// Verification mode: reject estimates whose tail spread exceeds 1e-4.
  bool require_convergence = false;

  void validate() const {
    if (!(lambda0 > 0.0 && lambda0 < 1.0)) fail(ErrorKind::parameter, "lambda0 must lie in (0, 1)");
    if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorKind::parameter, "ratio must lie in (0, 1)");
    if (count < 2) fail(ErrorKind::parameter, "schedule needs at least two lambda values");
    if (order != 0 && order != 1) fail(ErrorKind::parameter, "extrapolation order must be 0 or 1");
    if (smallest_lambda() < 1e-10)
      fail(ErrorKind::parameter, "smallest lambda " + std::to_string(smallest_lambda()) +
                                     " is below the 1e-10 cancellation floor");
  }

  double smallest_lambda() const { return lambda0 * std::pow(ratio, count - 1); }
};

struct LimitEstimate {
  double estimate;
  double spread;  // max - min of the last three raw sequence values
};

/// A_{B(0,R),w}(X). Centered poles work in any dimension (A = log(|X|/R));
/// off-center poles use the n = 2 closed form after rotating w onto the first
/// axis, shifted by the scaling law A_{rho Omega} = A_Omega - log rho.
inline double azukawa_ball(double R, const CPoint& w, const CPoint& X) {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::parameter, "ball radius must be positive");
  if (w.size() != X.size()) fail(ErrorKind::dimension_mismatch, "azukawa_ball: dimensions disagree");
  const double nw = euclid_norm(w);
  if (!(nw < R)) fail(ErrorKind::domain, "azukawa_ball: pole must lie strictly inside the ball");

  if (nw == 0.0) return std::log(euclid_norm(X) / R);

  if (w.size() != 2)
    fail(ErrorKind::unsupported, "off-center ball closed form is only available in dimension 2");
  const double r = nw / R;
  // unitary with U w = (|w|, 0): rows u1 = w/|w|, u2 = (-conj(w2), conj(w1))/|w|
  const Complex u11 = w[0] / nw, u12 = w[1] / nw;
  const Complex y1 = X[0] * std::conj(u11) + X[1] * std::conj(u12);
  const Complex y2 = X[0] * (-u12) + X[1] * u11;  // conj of (-conj(w2), conj(w1))/|w|
  const double s = 1.0 - r * r;
  return 0.5 * std::log((std::norm(y1) + s * std::norm(y2)) / (s * s)) - std::log(R);
}

/// A_{Omega,0}(X) = log h(X) for a balanced domain {h < 1}.
inline double azukawa_balanced(const MinkowskiGauge& h, const CPoint& X) { return std::log(h(X)); }

/// The Hartogs ball family: fiber Omega_t is the ball of radius e^{-phi(t)}
/// with pole (1, 0), and
///   A(X) = phi(t) + (1/2) log[(|X1|^2 + (1-e^{2 phi})|X2|^2) / (1-e^{2 phi})^2].
inline double azukawa_hartogs(const SubharmonicExpr& phi, Complex t, const CPoint& X) {
  if (X.size() != 2) fail(ErrorKind::dimension_mismatch, "azukawa_hartogs lives in dimension 2");
  const double p = phi(t);
  if (!(p < 0.0))
    fail(ErrorKind::domain, "azukawa_hartogs: phi(t) = " + std::to_string(p) +
                                " must be negative (the pole (1,0) must sit inside the fiber)");
  const double s = 1.0 - std::exp(2.0 * p);
  return p + 0.5 * std::log((std::norm(X[0]) + s * std::norm(X[1])) / (s * s));
}

/// Definition-based estimator of A_{Omega,w}(X) from a Green evaluator:
/// follows g(w + lambda_k X) - log lambda_k down the schedule and
/// extrapolates. The spread of the last three raw values is the convergence
/// diagnostic.
inline LimitEstimate azukawa_limit(const GreenEvaluator& g, const CPoint& X, const LambdaSchedule& s) {
  s.validate();
  if (static_cast<int>(X.size()) != g.dimension())
    fail(ErrorKind::dimension_mismatch, "azukawa_limit: direction dimension disagrees with the domain");
  if (norm_sq(X) == 0.0) fail(ErrorKind::parameter, "azukawa_limit: direction must be nonzero");

  double lambda0 = s.lambda0;
  int shrink = 0;
  while (!g.contains(axpy(g.pole(), Complex{lambda0, 0.0}, X))) {
    if (++shrink > 8)
      fail(ErrorKind::domain, "azukawa_limit: w + lambda0 X stayed outside the domain after 8 shrinks");
    lambda0 *= 0.5;
  }

  std::vector<double> seq(static_cast<std::size_t>(s.count));
  double lambda = lambda0;
  for (int k = 0; k < s.count; ++k) {
    seq[static_cast<std::size_t>(k)] = g(axpy(g.pole(), Complex{lambda, 0.0}, X)) - std::log(lambda);
    lambda *= s.ratio;
  }

  double estimate;
  if (s.order == 0) {
    estimate = seq.back();
  } else {
    const double a0 = seq[seq.size() - 2], a1 = seq.back();
    estimate = (a1 - s.ratio * a0) / (1.0 - s.ratio);
  }

  const std::size_t tail = seq.size() >= 3 ? seq.size() - 3 : 0;
  double lo = seq[tail], hi = seq[tail];
  for (std::size_t k = tail; k < seq.size(); ++k) {
    lo = std::min(lo, seq[k]);
    hi = std::max(hi, seq[k]);
  }
  const LimitEstimate out{estimate, hi - lo};
  if (s.require_convergence && !(out.spread <= 1e-4))
    fail(ErrorKind::convergence,
         "azukawa_limit: tail spread " + std::to_string(out.spread) + " exceeds 1e-4");
  return out;
}

/// Robin constant A_{Omega,w}(1) of a one-dimensional domain.
inline double robin_constant(const GreenEvaluator& g, const LambdaSchedule& s) {
  if (g.dimension() != 1) fail(ErrorKind::dimension_mismatch, "robin_constant needs a one-dimensional domain");
  return azukawa_limit(g, CPoint{Complex{1.0, 0.0}}, s).estimate;
}

/// Azukawa pseudometric A: X -> [-inf, +inf), log-homogeneous
/// (A(lambda X) = A(X) + log|lambda|), with A(0) = -inf.
class AzukawaEvaluator {
 public:
  static AzukawaEvaluator ball_closed_form(double R, CPoint w) {
    if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::parameter, "ball radius must be positive");
    check_point(w, "AzukawaEvaluator pole");
    if (!(euclid_norm(w) < R)) fail(ErrorKind::domain, "pole must lie strictly inside the ball");
    if (euclid_norm(w) > 0.0 && w.size() != 2)
      fail(ErrorKind::unsupported, "off-center ball closed form is only available in dimension 2");
    const int dim = static_cast<int>(w.size());
    return AzukawaEvaluator([R, w = std::move(w)](const CPoint& X) { return azukawa_ball(R, w, X); }, dim,
                            true, "ball");
  }

  static AzukawaEvaluator balanced_closed_form(MinkowskiGauge h) {
    const int dim = h.dimension();
    return AzukawaEvaluator([h = std::move(h)](const CPoint& X) { return azukawa_balanced(h, X); }, dim,
                            true, "balanced");
  }

  static AzukawaEvaluator hartogs_family(SubharmonicExpr phi, Complex t) {
    const double p = phi(t);  // validates once; azukawa_hartogs re-checks cheaply
    if (!(p < 0.0))
      fail(ErrorKind::domain, "hartogs_family: phi(t) = " + std::to_string(p) + " must be negative");
    return AzukawaEvaluator(
        [phi = std::move(phi), t](const CPoint& X) { return azukawa_hartogs(phi, t, X); }, 2, true,
        "hartogs");
  }

  static AzukawaEvaluator limit_based(GreenEvaluator g, LambdaSchedule s) {
    s.validate();
    const int dim = g.dimension();
    return AzukawaEvaluator(
        [g = std::move(g), s](const CPoint& X) { return azukawa_limit(g, X, s).estimate; }, dim, false,
        "limit");
  }

  /// Escape hatch used by tests for degenerate directions.
  static AzukawaEvaluator unchecked(std::function<double(const CPoint&)> fn, int dim) {
    return AzukawaEvaluator(std::move(fn), dim, false, "unchecked");
  }

  /// azukawa_scale: the evaluator of rho * Omega, i.e. A - log rho.
  AzukawaEvaluator scaled(double rho) const {
    if (!(rho > 0.0) || !std::isfinite(rho)) fail(ErrorKind::parameter, "scale factor must be positive");
    AzukawaEvaluator out = *this;
    out.offset_ -= std::log(rho);
    return out;
  }

  /// A + c (used for the unit-ball normalization of the epsilon identity).
  AzukawaEvaluator shifted(double c) const {
    AzukawaEvaluator out = *this;
    out.offset_ += c;
    return out;
  }

  double operator()(const CPoint& X) const {
    if (static_cast<int>(X.size()) != dim_)
      fail(ErrorKind::dimension_mismatch, "azukawa evaluator of dimension " + std::to_string(dim_) +
                                              " applied to a point of dimension " + std::to_string(X.size()));
    return fn_(X) + offset_;
  }

  int dimension() const noexcept { return dim_; }
  bool closed_form() const noexcept { return closed_form_; }
  const std::string& label() const noexcept { return label_; }

 private:
  AzukawaEvaluator(std::function<double(const CPoint&)> fn, int dim, bool closed, std::string label)
      : fn_(std::move(fn)), dim_(dim), closed_form_(closed), label_(std::move(label)) {}

  std::function<double(const CPoint&)> fn_;
  int dim_;
  double offset_ = 0.0;
  bool closed_form_;
  std::string label_;
};

}  // namespace pluri
