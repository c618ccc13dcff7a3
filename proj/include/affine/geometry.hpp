#pragma once

#include <array>

#include "affine/mat3.hpp"

namespace affine {

/// Image of the unit ball under a linear map: semi-axes are the singular
/// values of the generator, descending; orientation columns are the
/// corresponding axis directions.
struct Ellipsoid {
  std::array<double, 3> semi_axes{};
  Mat3 orientation;

  double diameter() const { return 2.0 * semi_axes[0]; }
};

Ellipsoid ellipsoid_of(const Mat3& A);

/// (4 pi / 3) det A.  Degenerate (det = 0) domains are legal here.
double volume(const Mat3& A);

/// Ellipsoid of A / t, the domain rescaled by elapsed time.
Ellipsoid rescaled_domain(const Mat3& A, double t);

enum class ShapeLabel { egg, pancake, sausage };

const char* to_string(ShapeLabel label);

struct AsymptoticShape {
  int rank = 0;
  std::array<double, 3> semi_axes{};  // nonzero singular values first
  ShapeLabel label = ShapeLabel::egg;
};

/// Rank classification of a limiting direction matrix by thresholded singular
/// values.  `tol` is relative to the largest singular value, so rescaling the
/// input never changes the classification.
AsymptoticShape classify_asymptotic(const Mat3& A1, double tol = 1e-8);

}  // namespace affine
