#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pluri/point.hpp"

namespace pluri {

/// Subharmonic weight phi(t) on (a piece of) the complex plane, built from a
/// catalogue of subharmonicity-preserving combinators: harmonic parts of
/// polynomials, |p|^2, log|p|, nonnegative sums, max, and three convex
/// increasing composites. Values are finite or -infinity (log|p| at zeros).
class SubharmonicExpr {
 public:
  enum class Chi {
    exp,                         // x -> e^x, convex increasing on R
    log_inv_one_minus_exp,       // x -> log(1/(1-e^x)), valid for x < 0
    log_exp_over_one_minus_exp,  // x -> log(e^x/(1-e^x)), valid for x < 0
  };

  static SubharmonicExpr harmonic_re(std::vector<Complex> poly) { return harmonic(std::move(poly), true); }
  static SubharmonicExpr harmonic_im(std::vector<Complex> poly) { return harmonic(std::move(poly), false); }

  static SubharmonicExpr abs_sq(std::vector<Complex> poly) {
    auto n = poly_node(Kind::abs_sq, std::move(poly));
    return SubharmonicExpr(std::move(n));
  }

  static SubharmonicExpr log_abs(std::vector<Complex> poly) {
    auto n = poly_node(Kind::log_abs, std::move(poly));
    return SubharmonicExpr(std::move(n));
  }

  /// a*u + b*v with a, b >= 0 (weights checked; constants are harmonic, so a
  /// negative constant still enters through Const).
  static SubharmonicExpr sum(double a, SubharmonicExpr u, double b, SubharmonicExpr v) {
    if (!(a >= 0.0) || !(b >= 0.0))
      fail(ErrorKind::construction, "sum weights must be nonnegative (use sum_unchecked to opt out)");
    return weighted_sum(a, std::move(u), b, std::move(v), false);
  }

  /// Same shape with arbitrary real weights; the subharmonicity guarantee is
  /// forfeited. This is how deliberate counterexamples enter the harness.
  static SubharmonicExpr sum_unchecked(double a, SubharmonicExpr u, double b, SubharmonicExpr v) {
    return weighted_sum(a, std::move(u), b, std::move(v), true);
  }

  static SubharmonicExpr max_of(SubharmonicExpr u, SubharmonicExpr v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::max_of;
    n->lhs = u.node_;
    n->rhs = v.node_;
    return SubharmonicExpr(std::move(n));
  }

  static SubharmonicExpr convex_increasing(Chi chi, SubharmonicExpr inner) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::convex;
    n->chi = chi;
    n->lhs = inner.node_;
    return SubharmonicExpr(std::move(n));
  }

  static SubharmonicExpr constant(double c) {
    if (!std::isfinite(c)) fail(ErrorKind::construction, "constant must be finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->c = c;
    return SubharmonicExpr(std::move(n));
  }

  /// Arbitrary callable; no guarantee, not serializable.
  static SubharmonicExpr unchecked_fn(std::function<double(Complex)> fn) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::unchecked;
    n->fn = std::move(fn);
    return SubharmonicExpr(std::move(n));
  }

  /// subharmonic_eval: finite or -infinity; throws when a bounded convex
  /// composite is evaluated outside its validity half-line (argument >= 0).
  double operator()(Complex t) const { return eval(*node_, t); }

  bool serializable() const { return is_serializable(*node_); }

  nlohmann::json to_json() const { return node_to_json(*node_); }

  static SubharmonicExpr from_json(const nlohmann::json& j) { return SubharmonicExpr(node_from_json(j)); }

 private:
  enum class Kind { harmonic, abs_sq, log_abs, sum, max_of, convex, constant, unchecked };

  struct Node {
    Kind kind;
    bool real_part = true;        // harmonic
    std::vector<Complex> poly;    // harmonic / abs_sq / log_abs, ascending coefficients
    double a = 0.0, b = 0.0;      // sum weights
    bool unchecked_weights = false;
    Chi chi = Chi::exp;
    double c = 0.0;               // constant
    std::shared_ptr<const Node> lhs, rhs;
    std::function<double(Complex)> fn;
  };

  explicit SubharmonicExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static SubharmonicExpr harmonic(std::vector<Complex> poly, bool real_part) {
    auto n = poly_node(Kind::harmonic, std::move(poly));
    n->real_part = real_part;
    return SubharmonicExpr(std::move(n));
  }

  static std::shared_ptr<Node> poly_node(Kind kind, std::vector<Complex> poly) {
    if (poly.empty()) fail(ErrorKind::construction, "polynomial needs at least one coefficient");
    for (const Complex& c : poly)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        fail(ErrorKind::construction, "polynomial coefficients must be finite");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->poly = std::move(poly);
    return n;
  }

  static SubharmonicExpr weighted_sum(double a, SubharmonicExpr u, double b, SubharmonicExpr v,
                                      bool unchecked) {
    if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::construction, "sum weights must be finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::sum;
    n->a = a;
    n->b = b;
    n->unchecked_weights = unchecked;
    n->lhs = u.node_;
    n->rhs = v.node_;
    return SubharmonicExpr(std::move(n));
  }

  static Complex horner(const std::vector<Complex>& poly, Complex t) {
    Complex v{0.0, 0.0};
    for (std::size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
    return v;
  }

  static double apply_chi(Chi chi, double x) {
    switch (chi) {
      case Chi::exp:
        return std::exp(x);  // exp(-inf) == 0
      case Chi::log_inv_one_minus_exp:
        if (!(x < 0.0))
          fail(ErrorKind::domain, "log(1/(1-e^x)) requires a negative argument, got x = " + std::to_string(x));
        return -std::log1p(-std::exp(x));
      case Chi::log_exp_over_one_minus_exp:
        if (x == kNegInfinity) return kNegInfinity;
        if (!(x < 0.0))
          fail(ErrorKind::domain, "log(e^x/(1-e^x)) requires a negative argument, got x = " + std::to_string(x));
        return x - std::log1p(-std::exp(x));
    }
    fail(ErrorKind::construction, "corrupt chi tag");
  }

  static double eval(const Node& n, Complex t) {
    switch (n.kind) {
      case Kind::harmonic: {
        const Complex p = horner(n.poly, t);
        return n.real_part ? p.real() : p.imag();
      }
      case Kind::abs_sq:
        return std::norm(horner(n.poly, t));
      case Kind::log_abs:
        return std::log(std::abs(horner(n.poly, t)));  // log(0) == -inf at zeros
      case Kind::sum: {
        const double u = n.a == 0.0 ? 0.0 : n.a * eval(*n.lhs, t);
        const double v = n.b == 0.0 ? 0.0 : n.b * eval(*n.rhs, t);
        const double s = u + v;
        if (std::isnan(s)) fail(ErrorKind::domain, "weighted sum is indeterminate (inf - inf)");
        return s;
      }
      case Kind::max_of:
        return std::max(eval(*n.lhs, t), eval(*n.rhs, t));
      case Kind::convex:
        return apply_chi(n.chi, eval(*n.lhs, t));
      case Kind::constant:
        return n.c;
      case Kind::unchecked:
        return n.fn(t);
    }
    fail(ErrorKind::construction, "corrupt expression node");
  }

  static bool is_serializable(const Node& n) {
    if (n.kind == Kind::unchecked) return false;
    if (n.lhs && !is_serializable(*n.lhs)) return false;
    if (n.rhs && !is_serializable(*n.rhs)) return false;
    return true;
  }

  static nlohmann::json poly_to_json(const std::vector<Complex>& poly) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& c : poly) arr.push_back({c.real(), c.imag()});
    return arr;
  }

  static std::vector<Complex> poly_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::config, "poly: expected a non-empty array of [re, im]");
    std::vector<Complex> poly;
    poly.reserve(j.size());
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) fail(ErrorKind::config, "poly coefficients must be [re, im] pairs");
      poly.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return poly;
  }

  static const char* chi_name(Chi chi) {
    switch (chi) {
      case Chi::exp: return "exp";
      case Chi::log_inv_one_minus_exp: return "log_inv_one_minus_exp";
      case Chi::log_exp_over_one_minus_exp: return "log_exp_over_one_minus_exp";
    }
    return "?";
  }

  static nlohmann::json node_to_json(const Node& n) {
    nlohmann::json j;
    switch (n.kind) {
      case Kind::harmonic:
        j["kind"] = "harmonic_poly";
        j["part"] = n.real_part ? "re" : "im";
        j["poly"] = poly_to_json(n.poly);
        return j;
      case Kind::abs_sq:
        j["kind"] = "abssq";
        j["poly"] = poly_to_json(n.poly);
        return j;
      case Kind::log_abs:
        j["kind"] = "logabs";
        j["poly"] = poly_to_json(n.poly);
        return j;
      case Kind::sum:
        j["kind"] = "sum";
        j["a"] = n.a;
        j["b"] = n.b;
        j["u"] = node_to_json(*n.lhs);
        j["v"] = node_to_json(*n.rhs);
        if (n.unchecked_weights) j["unchecked"] = true;
        return j;
      case Kind::max_of:
        j["kind"] = "max";
        j["lhs"] = node_to_json(*n.lhs);
        j["rhs"] = node_to_json(*n.rhs);
        return j;
      case Kind::convex:
        j["kind"] = "convex";
        j["chi"] = chi_name(n.chi);
        j["inner"] = node_to_json(*n.lhs);
        return j;
      case Kind::constant:
        j["kind"] = "const";
        j["value"] = n.c;
        return j;
      case Kind::unchecked:
        fail(ErrorKind::unsupported, "unchecked expressions are not serializable");
    }
    fail(ErrorKind::construction, "corrupt expression node");
  }

  static std::shared_ptr<const Node> node_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
      fail(ErrorKind::config, "phi: expected an object with a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    auto need = [&](const char* field) -> const nlohmann::json& {
      if (!j.contains(field))
        fail(ErrorKind::config, "phi kind \"" + kind + "\": missing field \"" + field + "\"");
      return j.at(field);
    };
    if (kind == "harmonic_poly") {
      const std::string part = need("part").get<std::string>();
      if (part != "re" && part != "im") fail(ErrorKind::config, "harmonic_poly part must be \"re\" or \"im\"");
      return harmonic(poly_from_json(need("poly")), part == "re").node_;
    }
    if (kind == "abssq") return abs_sq(poly_from_json(need("poly"))).node_;
    if (kind == "logabs") return log_abs(poly_from_json(need("poly"))).node_;
    if (kind == "sum") {
      const bool unchecked = j.value("unchecked", false);
      SubharmonicExpr u(node_from_json(need("u")));
      SubharmonicExpr v(node_from_json(need("v")));
      const double a = need("a").get<double>();
      const double b = need("b").get<double>();
      return (unchecked ? sum_unchecked(a, std::move(u), b, std::move(v))
                        : sum(a, std::move(u), b, std::move(v)))
          .node_;
    }
    if (kind == "max")
      return max_of(SubharmonicExpr(node_from_json(need("lhs"))), SubharmonicExpr(node_from_json(need("rhs"))))
          .node_;
    if (kind == "convex") {
      const std::string chi = need("chi").get<std::string>();
      Chi c;
      if (chi == "exp")
        c = Chi::exp;
      else if (chi == "log_inv_one_minus_exp")
        c = Chi::log_inv_one_minus_exp;
      else if (chi == "log_exp_over_one_minus_exp")
        c = Chi::log_exp_over_one_minus_exp;
      else
        fail(ErrorKind::config, "phi: unknown chi \"" + chi + "\"");
      return convex_increasing(c, SubharmonicExpr(node_from_json(need("inner")))).node_;
    }
    if (kind == "const") return constant(need("value").get<double>()).node_;
    fail(ErrorKind::config, "phi: unknown kind \"" + kind + "\"");
  }

  std::shared_ptr<const Node> node_;
};

/// |t|^2 + c, the workhorse weight of the examples.
inline SubharmonicExpr abs_sq_plus_const(double c) {
  return SubharmonicExpr::sum(1.0, SubharmonicExpr::abs_sq({Complex{0, 0}, Complex{1, 0}}), 1.0,
                              SubharmonicExpr::constant(c));
}

}  // namespace pluri
