#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

#include "pluri/error.hpp"

namespace pluri {

using Complex = std::complex<double>;

/// A point (or tangent vector) of C^n, n >= 1.
using CPoint = std::vector<Complex>;

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

inline double norm_sq(const CPoint& z) {
  double s = 0.0;
  for (const Complex& c : z) s += std::norm(c);
  return s;
}

inline double euclid_norm(const CPoint& z) { return std::sqrt(norm_sq(z)); }

/// Hermitian inner product <z, a> = sum_i z_i * conj(a_i).
inline Complex inner(const CPoint& z, const CPoint& a) {
  if (z.size() != a.size())
    fail(ErrorKind::dimension_mismatch, "inner product of points with different dimensions");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(a[i]);
  return s;
}

inline CPoint scaled(const CPoint& z, Complex c) {
  CPoint out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = c * z[i];
  return out;
}

inline CPoint add(const CPoint& a, const CPoint& b) {
  if (a.size() != b.size()) fail(ErrorKind::dimension_mismatch, "adding points of different dimensions");
  CPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline CPoint sub(const CPoint& a, const CPoint& b) {
  if (a.size() != b.size()) fail(ErrorKind::dimension_mismatch, "subtracting points of different dimensions");
  CPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// a + lambda * x, the line parametrization used all over the verifiers.
inline CPoint axpy(const CPoint& a, Complex lambda, const CPoint& x) {
  if (a.size() != x.size()) fail(ErrorKind::dimension_mismatch, "axpy of points with different dimensions");
  CPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + lambda * x[i];
  return out;
}

inline CPoint zero_point(int n) { return CPoint(static_cast<std::size_t>(n), Complex{0.0, 0.0}); }

inline CPoint unit_axis(int n, int axis) {
  CPoint e = zero_point(n);
  e[static_cast<std::size_t>(axis)] = Complex{1.0, 0.0};
  return e;
}

inline bool all_finite(const CPoint& z) {
  for (const Complex& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

inline void check_point(const CPoint& z, const char* what) {
  if (z.empty()) fail(ErrorKind::construction, std::string(what) + ": dimension must be >= 1");
  if (!all_finite(z)) fail(ErrorKind::construction, std::string(what) + ": coordinates must be finite");
}

inline std::string format_point(const CPoint& z) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) os << ", ";
    os << z[i].real() << (z[i].imag() < 0 ? "-" : "+") << std::abs(z[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

/// A unit vector of C^n, stored normalized; the hat-direction of a nonzero vector.
class UnitDirection {
 public:
  explicit UnitDirection(const CPoint& x) {
    check_point(x, "UnitDirection");
    const double n = euclid_norm(x);
    if (n == 0.0) fail(ErrorKind::construction, "UnitDirection: cannot normalize the zero vector");
    value_ = scaled(x, Complex{1.0 / n, 0.0});
  }

  const CPoint& value() const noexcept { return value_; }
  int dimension() const noexcept { return static_cast<int>(value_.size()); }

 private:
  CPoint value_;
};

}  // namespace pluri
