#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pluri/linalg.hpp"
#include "pluri/point.hpp"

namespace pluri {

/// Minkowski gauge h of a bounded balanced pseudoconvex domain {h < 1}:
/// h(lambda z) = |lambda| h(z), h > 0 off the origin, log h plurisubharmonic.
///
/// Instances come from a closed combinator catalogue, so the psh property
/// holds by construction and downstream verifiers test theorems rather than
/// input hygiene. Arbitrary callables are admitted only through `unchecked`.
class MinkowskiGauge {
 public:
  static MinkowskiGauge ellipsoid(std::vector<double> radii) {
    if (radii.empty()) fail(ErrorKind::construction, "ellipsoid gauge needs at least one radius");
    for (double a : radii)
      if (!(a > 0.0) || !std::isfinite(a))
        fail(ErrorKind::construction, "ellipsoid radii must be positive and finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::ellipsoid;
    n->dim = static_cast<int>(radii.size());
    n->bound = *std::max_element(radii.begin(), radii.end());
    n->radii = std::move(radii);
    return MinkowskiGauge(std::move(n));
  }

  static MinkowskiGauge max_abs(int dim) {
    check_dim(dim);
    auto n = std::make_shared<Node>();
    n->kind = Kind::max_abs;
    n->dim = dim;
    n->bound = std::sqrt(static_cast<double>(dim));
    return MinkowskiGauge(std::move(n));
  }

  static MinkowskiGauge sum_abs(int dim) {
    check_dim(dim);
    auto n = std::make_shared<Node>();
    n->kind = Kind::sum_abs;
    n->dim = dim;
    n->bound = 1.0;  // sum of moduli dominates the euclidean norm
    return MinkowskiGauge(std::move(n));
  }

  static MinkowskiGauge max_of(MinkowskiGauge a, MinkowskiGauge b) {
    check_same(a, b, "max_of");
    auto n = std::make_shared<Node>();
    n->kind = Kind::max_of;
    n->dim = a.dimension();
    n->bound = std::min(a.bounding_radius(), b.bounding_radius());
    n->lhs = a.node_;
    n->rhs = b.node_;
    return MinkowskiGauge(std::move(n));
  }

  static MinkowskiGauge geo_mean(MinkowskiGauge a, MinkowskiGauge b, double theta) {
    check_same(a, b, "geo_mean");
    if (!(theta >= 0.0 && theta <= 1.0))
      fail(ErrorKind::construction, "geo_mean weight theta must lie in [0, 1]");
    auto n = std::make_shared<Node>();
    n->kind = Kind::geo_mean;
    n->dim = a.dimension();
    n->theta = theta;
    n->bound = std::pow(a.bounding_radius(), theta) * std::pow(b.bounding_radius(), 1.0 - theta);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return MinkowskiGauge(std::move(n));
  }

  static MinkowskiGauge scale(MinkowskiGauge inner, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
      fail(ErrorKind::construction, "scale factor must be positive and finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::scale;
    n->dim = inner.dimension();
    n->factor = factor;
    n->bound = inner.bounding_radius() / factor;
    n->lhs = inner.node_;
    return MinkowskiGauge(std::move(n));
  }

  /// z -> h(M z). M must be invertible; singularity is a construction-time
  /// error so evaluation never has to cope with it.
  static MinkowskiGauge pullback(MinkowskiGauge inner, ComplexMatrix m) {
    if (m.dim() != inner.dimension())
      fail(ErrorKind::dimension_mismatch, "pullback matrix dimension disagrees with the gauge");
    const ComplexMatrix minv = m.inverse();  // throws if singular
    auto n = std::make_shared<Node>();
    n->kind = Kind::pullback;
    n->dim = inner.dimension();
    // h(Mz) >= |Mz| / B >= sigma_min(M) |z| / B and sigma_min >= 1/|M^-1|_F.
    n->bound = inner.bounding_radius() * minv.frobenius_norm();
    n->matrix = std::move(m);
    n->lhs = inner.node_;
    return MinkowskiGauge(std::move(n));
  }

  /// Escape hatch for callables outside the catalogue. No psh or homogeneity
  /// guarantee, not serializable; the caller supplies the circumscribed radius.
  static MinkowskiGauge unchecked(std::function<double(const CPoint&)> fn, int dim,
                                  double bounding_radius) {
    check_dim(dim);
    if (!(bounding_radius > 0.0))
      fail(ErrorKind::construction, "unchecked gauge needs a positive bounding radius");
    auto n = std::make_shared<Node>();
    n->kind = Kind::unchecked;
    n->dim = dim;
    n->bound = bounding_radius;
    n->fn = std::move(fn);
    return MinkowskiGauge(std::move(n));
  }

  /// gauge_eval: h(z) >= 0, h(0) = 0; z belongs to {h < 1} iff the result < 1.
  double operator()(const CPoint& z) const {
    if (static_cast<int>(z.size()) != node_->dim)
      fail(ErrorKind::dimension_mismatch, "gauge of dimension " + std::to_string(node_->dim) +
                                              " evaluated at a point of dimension " +
                                              std::to_string(z.size()));
    return eval(*node_, z);
  }

  int dimension() const noexcept { return node_->dim; }

  /// Radius of a closed euclidean ball containing {h < 1} (never tight by
  /// more than the catalogue's combinator bounds).
  double bounding_radius() const noexcept { return node_->bound; }

  bool serializable() const { return is_serializable(*node_); }

  nlohmann::json to_json() const { return node_to_json(*node_); }

  static MinkowskiGauge from_json(const nlohmann::json& j) { return MinkowskiGauge(node_from_json(j)); }

 private:
  enum class Kind { ellipsoid, max_abs, sum_abs, max_of, geo_mean, scale, pullback, unchecked };

  struct Node {
    Kind kind;
    int dim = 0;
    double bound = 0.0;
    std::vector<double> radii;
    double theta = 0.0;
    double factor = 1.0;
    ComplexMatrix matrix;
    std::shared_ptr<const Node> lhs, rhs;
    std::function<double(const CPoint&)> fn;
  };

  explicit MinkowskiGauge(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static void check_dim(int dim) {
    if (dim < 1) fail(ErrorKind::construction, "gauge dimension must be >= 1");
  }

  static void check_same(const MinkowskiGauge& a, const MinkowskiGauge& b, const char* what) {
    if (a.dimension() != b.dimension())
      fail(ErrorKind::dimension_mismatch, std::string(what) + ": operand gauges have different dimensions");
  }

  static double eval(const Node& n, const CPoint& z) {
    switch (n.kind) {
      case Kind::ellipsoid: {
        double s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
          const double a = n.radii[i];
          s += std::norm(z[i]) / (a * a);
        }
        return std::sqrt(s);
      }
      case Kind::max_abs: {
        double m = 0.0;
        for (const Complex& c : z) m = std::max(m, std::abs(c));
        return m;
      }
      case Kind::sum_abs: {
        double s = 0.0;
        for (const Complex& c : z) s += std::abs(c);
        return s;
      }
      case Kind::max_of:
        return std::max(eval(*n.lhs, z), eval(*n.rhs, z));
      case Kind::geo_mean:
        return std::pow(eval(*n.lhs, z), n.theta) * std::pow(eval(*n.rhs, z), 1.0 - n.theta);
      case Kind::scale:
        return n.factor * eval(*n.lhs, z);
      case Kind::pullback:
        return eval(*n.lhs, n.matrix.apply(z));
      case Kind::unchecked:
        return n.fn(z);
    }
    fail(ErrorKind::construction, "corrupt gauge node");
  }

  static bool is_serializable(const Node& n) {
    if (n.kind == Kind::unchecked) return false;
    if (n.lhs && !is_serializable(*n.lhs)) return false;
    if (n.rhs && !is_serializable(*n.rhs)) return false;
    return true;
  }

  static nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < m.dim(); ++j)
        row.push_back({m.at(i, j).real(), m.at(i, j).imag()});
      rows.push_back(std::move(row));
    }
    return rows;
  }

  static ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::config, "gauge matrix: expected a non-empty array of rows");
    const int n = static_cast<int>(j.size());
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : j) {
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        fail(ErrorKind::config, "gauge matrix: rows must all have length " + std::to_string(n));
      for (const auto& e : row) {
        if (!e.is_array() || e.size() != 2)
          fail(ErrorKind::config, "gauge matrix entries must be [re, im] pairs");
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
    }
    return ComplexMatrix(n, std::move(entries));
  }

  static nlohmann::json node_to_json(const Node& n) {
    nlohmann::json j;
    switch (n.kind) {
      case Kind::ellipsoid:
        j["kind"] = "ellipsoid";
        j["radii"] = n.radii;
        return j;
      case Kind::max_abs:
        j["kind"] = "maxabs";
        j["dim"] = n.dim;
        return j;
      case Kind::sum_abs:
        j["kind"] = "sumabs";
        j["dim"] = n.dim;
        return j;
      case Kind::max_of:
        j["kind"] = "max";
        j["lhs"] = node_to_json(*n.lhs);
        j["rhs"] = node_to_json(*n.rhs);
        return j;
      case Kind::geo_mean:
        j["kind"] = "geomean";
        j["theta"] = n.theta;
        j["lhs"] = node_to_json(*n.lhs);
        j["rhs"] = node_to_json(*n.rhs);
        return j;
      case Kind::scale:
        j["kind"] = "scale";
        j["factor"] = n.factor;
        j["inner"] = node_to_json(*n.lhs);
        return j;
      case Kind::pullback:
        j["kind"] = "pullback";
        j["matrix"] = matrix_to_json(n.matrix);
        j["inner"] = node_to_json(*n.lhs);
        return j;
      case Kind::unchecked:
        fail(ErrorKind::unsupported, "unchecked gauges are not serializable");
    }
    fail(ErrorKind::construction, "corrupt gauge node");
  }

  static std::shared_ptr<const Node> node_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
      fail(ErrorKind::config, "gauge: expected an object with a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    auto need = [&](const char* field) -> const nlohmann::json& {
      if (!j.contains(field))
        fail(ErrorKind::config, "gauge kind \"" + kind + "\": missing field \"" + field + "\"");
      return j.at(field);
    };
    if (kind == "ellipsoid") return ellipsoid(need("radii").get<std::vector<double>>()).node_;
    if (kind == "maxabs") return max_abs(need("dim").get<int>()).node_;
    if (kind == "sumabs") return sum_abs(need("dim").get<int>()).node_;
    if (kind == "max")
      return max_of(MinkowskiGauge(node_from_json(need("lhs"))), MinkowskiGauge(node_from_json(need("rhs"))))
          .node_;
    if (kind == "geomean")
      return geo_mean(MinkowskiGauge(node_from_json(need("lhs"))),
                      MinkowskiGauge(node_from_json(need("rhs"))), need("theta").get<double>())
          .node_;
    if (kind == "scale")
      return scale(MinkowskiGauge(node_from_json(need("inner"))), need("factor").get<double>()).node_;
    if (kind == "pullback")
      return pullback(MinkowskiGauge(node_from_json(need("inner"))), matrix_from_json(need("matrix"))).node_;
    fail(ErrorKind::config, "gauge: unknown kind \"" + kind + "\"");
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace pluri
