#include "affine/mat3.hpp"

#include <algorithm>
#include <cmath>

namespace affine {

double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 cof(const Mat3& a) {
  Mat3 c;
  c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  c(0, 1) = -(a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0));
  c(0, 2) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  c(1, 0) = -(a(0, 1) * a(2, 2) - a(0, 2) * a(2, 1));
  c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  c(1, 2) = -(a(0, 0) * a(2, 1) - a(0, 1) * a(2, 0));
  c(2, 0) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  c(2, 1) = -(a(0, 0) * a(1, 2) - a(0, 2) * a(1, 0));
  c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return c;
}

Mat3 inv(const Mat3& a, double rel_tol) {
  const double d = det(a);
  const double scale = operator_norm(a);
  if (std::abs(d) <= rel_tol * scale * scale * scale) {
    throw SingularMatrix("matrix is singular within threshold: |det| = " + std::to_string(std::abs(d)));
  }
  return cof(a).transpose() * (1.0 / d);
}

namespace {

// Cyclic Jacobi sweeps; always converges for symmetric input.
SymSpectrum jacobi_eigen(Mat3 s) {
  Mat3 v = Mat3::identity();
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(s(0, 1)) + std::abs(s(0, 2)) + std::abs(s(1, 2));
    if (off < 1e-300 || off < 1e-16 * (std::abs(s(0, 0)) + std::abs(s(1, 1)) + std::abs(s(2, 2)))) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (s(p, q) == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        Mat3 r = Mat3::identity();
        r(p, p) = c;
        r(q, q) = c;
        r(p, q) = sn;
        r(q, p) = -sn;
        s = r.transpose() * s * r;
        s(p, q) = s(q, p) = 0.0;  // forced by construction
        v = v * r;
      }
    }
  }
  SymSpectrum out;
  std::array<int, 3> order{0, 1, 2};
  std::array<double, 3> ev{s(0, 0), s(1, 1), s(2, 2)};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return ev[static_cast<std::size_t>(i)] > ev[static_cast<std::size_t>(j)]; });
  for (int k = 0; k < 3; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = ev[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    for (int i = 0; i < 3; ++i) out.frame(i, k) = v(i, order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Vec3 column_of_max_norm(const Mat3& a) {
  int best = 0;
  double best_n = -1.0;
  for (int j = 0; j < 3; ++j) {
    const double n = a(0, j) * a(0, j) + a(1, j) * a(1, j) + a(2, j) * a(2, j);
    if (n > best_n) {
      best_n = n;
      best = j;
    }
  }
  return {a(0, best), a(1, best), a(2, best)};
}

}  // namespace

SymSpectrum sym_eigen(const Mat3& s_in, double sym_tol) {
  const double scale = std::max(1.0, s_in.max_abs());
  double asym = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) asym = std::max(asym, std::abs(s_in(i, j) - s_in(j, i)));
  if (asym > sym_tol * scale) {
    throw NotSymmetric("input is not symmetric: max asymmetry " + std::to_string(asym));
  }
  Mat3 s = (s_in + s_in.transpose()) * 0.5;

  // Closed-form eigenvalues (trigonometric solution of the characteristic cubic).
  const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  const double q = s.trace() / 3.0;
  if (p1 < 1e-30 * scale * scale) {
    return jacobi_eigen(s);  // already (near-)diagonal
  }
  const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                    (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b = (s - Mat3::diag(q, q, q)) * (1.0 / p);
  double r = det(b) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e0 = q + 2.0 * p * std::cos(phi);
  const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e1 = 3.0 * q - e0 - e2;

  const double ev_scale = std::max({std::abs(e0), std::abs(e1), std::abs(e2), 1.0});
  if (std::min(e0 - e1, e1 - e2) < 1e-8 * ev_scale) {
    return jacobi_eigen(s);
  }

  // Distinct eigenvalues: eigenvectors from products of shifted matrices.
  const Mat3 m0 = (s - Mat3::diag(e1, e1, e1)) * (s - Mat3::diag(e2, e2, e2));
  const Mat3 m2 = (s - Mat3::diag(e0, e0, e0)) * (s - Mat3::diag(e1, e1, e1));
  Vec3 v0 = column_of_max_norm(m0);
  Vec3 v2 = column_of_max_norm(m2);
  v0 = v0 * (1.0 / v0.norm());
  v2 = v2 * (1.0 / v2.norm());
  Vec3 v1 = cross(v2, v0);
  v1 = v1 * (1.0 / v1.norm());
  v2 = cross(v0, v1);

  SymSpectrum out;
  out.eigenvalues = {e0, e1, e2};
  for (int i = 0; i < 3; ++i) {
    out.frame(i, 0) = v0[i];
    out.frame(i, 1) = v1[i];
    out.frame(i, 2) = v2[i];
  }

  // Reconstruction safeguard; clustered or ill-conditioned inputs fall through to Jacobi.
  Mat3 rec = out.frame * Mat3::diag(e0, e1, e2) * out.frame.transpose();
  if ((rec - s).frobenius_norm() > 1e-12 * std::max(1.0, s.frobenius_norm())) {
    return jacobi_eigen(s);
  }
  return out;
}

double operator_norm(const Mat3& a) {
  // Gram matrix assembled symmetric by construction.
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double sum = 0;
      for (int k = 0; k < 3; ++k) sum += a(k, i) * a(k, j);
      g(i, j) = g(j, i) = sum;
    }
  const SymSpectrum sp = sym_eigen(g, 1e-6);
  return std::sqrt(std::max(0.0, sp.eigenvalues[0]));
}

}  // namespace affine
