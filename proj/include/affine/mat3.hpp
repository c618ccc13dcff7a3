#pragma once

#include <array>
#include <cmath>

#include "affine/errors.hpp"

namespace affine {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double x, double y, double z) : v{x, y, z} {}

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  double norm() const { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

  Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
  Vec3 operator*(double c) const { return {c * v[0], c * v[1], c * v[2]}; }
};

inline Vec3 operator*(double c, const Vec3& x) { return x * c; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.v[1] * b.v[2] - a.v[2] * b.v[1],
          a.v[2] * b.v[0] - a.v[0] * b.v[2],
          a.v[0] * b.v[1] - a.v[1] * b.v[0]};
}

/// 3x3 real matrix, row-major storage.
struct Mat3 {
  std::array<double, 9> m{};

  Mat3() = default;

  double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3 zero() { return Mat3{}; }

  static Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }

  static Mat3 diag(double a, double b, double c) {
    Mat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  static Mat3 from_rows(const std::array<double, 9>& rows) {
    Mat3 r;
    r.m = rows;
    return r;
  }

  static Mat3 outer(const Vec3& u, const Vec3& w) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = u[i] * w[j];
    return r;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  double trace() const { return m[0] + m[4] + m[8]; }

  /// Euclidean (Hilbert-Schmidt) norm.
  double frobenius_norm() const {
    double s = 0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0;
    for (double x : m) s = std::max(s, std::abs(x));
    return s;
  }

  bool finite() const {
    for (double x : m)
      if (!std::isfinite(x)) return false;
    return true;
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] + o.m[static_cast<std::size_t>(i)];
    return r;
  }

  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] - o.m[static_cast<std::size_t>(i)];
    return r;
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  Vec3 operator*(const Vec3& x) const {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r[i] = (*this)(i, 0) * x[0] + (*this)(i, 1) * x[1] + (*this)(i, 2) * x[2];
    return r;
  }

  Mat3 operator*(double c) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[static_cast<std::size_t>(i)] = c * m[static_cast<std::size_t>(i)];
    return r;
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[static_cast<std::size_t>(i)] += o.m[static_cast<std::size_t>(i)];
    return *this;
  }

  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[static_cast<std::size_t>(i)] -= o.m[static_cast<std::size_t>(i)];
    return *this;
  }
};

inline Mat3 operator*(double c, const Mat3& a) { return a * c; }

/// Determinant by cofactor expansion across the first row.
double det(const Mat3& a);

/// Matrix of signed 2x2 minors; satisfies cof(A)^T A = det(A) I.
Mat3 cof(const Mat3& a);

/// Inverse via (det A)^{-1} (cof A)^T.  The matrix counts as singular when
/// |det A| <= rel_tol * ||A||^3 (operator norm), since det scales cubically.
Mat3 inv(const Mat3& a, double rel_tol = 1e-14);

/// Largest singular value.
double operator_norm(const Mat3& a);

/// Eigen-decomposition of a symmetric matrix.
struct SymSpectrum {
  std::array<double, 3> eigenvalues{};  // sorted descending
  Mat3 frame;                           // orthonormal eigenvectors as columns

  Vec3 eigenvector(int k) const { return {frame(0, k), frame(1, k), frame(2, k)}; }
};

/// Closed-form trigonometric eigensolver with a Jacobi-rotation fallback when
/// eigenvalues cluster.  Throws NotSymmetric when the input is asymmetric
/// beyond sym_tol (relative to the entry scale).
SymSpectrum sym_eigen(const Mat3& s, double sym_tol = 1e-10);

}  // namespace affine
