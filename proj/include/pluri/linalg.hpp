#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pluri/point.hpp"

namespace pluri {

/// Dense square complex matrix, row-major. Dimensions here are tiny (the
/// ambient C^n), so plain Gauss-Jordan with partial pivoting is all we need.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(int n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    if (n_ < 1 || a_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      fail(ErrorKind::construction, "ComplexMatrix: entries must be n*n with n >= 1");
    for (const Complex& c : a_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        fail(ErrorKind::construction, "ComplexMatrix: entries must be finite");
  }

  static ComplexMatrix identity(int n) {
    std::vector<Complex> e(static_cast<std::size_t>(n) * n, Complex{0, 0});
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = Complex{1, 0};
    return ComplexMatrix(n, std::move(e));
  }

  /// I + c * (xi e_1^T): first column c*xi added to the identity.
  static ComplexMatrix one_plus_rank_one_first_column(Complex c, const CPoint& xi) {
    const int n = static_cast<int>(xi.size());
    ComplexMatrix m = identity(n);
    for (int i = 0; i < n; ++i) m.at(i, 0) += c * xi[static_cast<std::size_t>(i)];
    return m;
  }

  int dim() const noexcept { return n_; }
  Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  CPoint apply(const CPoint& z) const {
    if (static_cast<int>(z.size()) != n_)
      fail(ErrorKind::dimension_mismatch, "matrix-vector product dimensions disagree");
    CPoint out(static_cast<std::size_t>(n_), Complex{0, 0});
    for (int i = 0; i < n_; ++i) {
      Complex s{0, 0};
      for (int j = 0; j < n_; ++j) s += at(i, j) * z[static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(i)] = s;
    }
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& c : a_) s += std::norm(c);
    return std::sqrt(s);
  }

  /// Gauss-Jordan inverse with partial pivoting; throws if singular to
  /// working precision.
  ComplexMatrix inverse() const {
    const int n = n_;
    std::vector<Complex> a = a_;
    ComplexMatrix inv = identity(n);
    double scale = 0.0;
    for (const Complex& c : a) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) fail(ErrorKind::construction, "matrix is zero, not invertible");

    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
            std::abs(a[static_cast<std::size_t>(piv) * n + col]))
          piv = r;
      if (std::abs(a[static_cast<std::size_t>(piv) * n + col]) <= 1e-13 * scale)
        fail(ErrorKind::construction, "matrix is singular to working precision");
      if (piv != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(a[static_cast<std::size_t>(col) * n + j], a[static_cast<std::size_t>(piv) * n + j]);
          std::swap(inv.at(col, j), inv.at(piv, j));
        }
      }
      const Complex d = a[static_cast<std::size_t>(col) * n + col];
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(col) * n + j] /= d;
        inv.at(col, j) /= d;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const Complex f = a[static_cast<std::size_t>(r) * n + col];
        if (f == Complex{0, 0}) continue;
        for (int j = 0; j < n; ++j) {
          a[static_cast<std::size_t>(r) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
          inv.at(r, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  bool operator==(const ComplexMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  const std::vector<Complex>& entries() const noexcept { return a_; }

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

}  // namespace pluri
