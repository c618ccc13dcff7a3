#include "affine/geometry.hpp"

#include <cmath>
#include <string>

namespace affine {

Ellipsoid ellipsoid_of(const Mat3& A) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double sum = 0;
      for (int k = 0; k < 3; ++k) sum += A(i, k) * A(j, k);
      g(i, j) = g(j, i) = sum;
    }
  const SymSpectrum sp = sym_eigen(g, 1e-6);
  Ellipsoid e;
  for (int k = 0; k < 3; ++k)
    e.semi_axes[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, sp.eigenvalues[static_cast<std::size_t>(k)]));
  e.orientation = sp.frame;
  return e;
}

double volume(const Mat3& A) {
  const double d = det(A);
  if (d < 0.0) throw DomainError("volume needs det A >= 0, got " + std::to_string(d));
  return 4.0 * M_PI / 3.0 * d;
}

Ellipsoid rescaled_domain(const Mat3& A, double t) {
  if (!(t > 0.0)) throw DomainError("rescaled domain needs t > 0");
  return ellipsoid_of(A * (1.0 / t));
}

const char* to_string(ShapeLabel label) {
  switch (label) {
    case ShapeLabel::egg: return "egg";
    case ShapeLabel::pancake: return "pancake";
    case ShapeLabel::sausage: return "sausage";
  }
  return "?";
}

AsymptoticShape classify_asymptotic(const Mat3& A1, double tol) {
  const Ellipsoid e = ellipsoid_of(A1);
  if (e.semi_axes[0] <= tol) throw ZeroAsymptote("direction matrix vanishes within tolerance");
  AsymptoticShape shape;
  shape.semi_axes = e.semi_axes;
  for (double s : e.semi_axes)
    if (s > tol * e.semi_axes[0]) ++shape.rank;
  shape.label = shape.rank == 3   ? ShapeLabel::egg
                : shape.rank == 2 ? ShapeLabel::pancake
                                  : ShapeLabel::sausage;
  return shape;
}

}  // namespace affine
