#pragma once

#include "affine/dynamics.hpp"
#include "affine/fit.hpp"

namespace affine {

/// Moment of inertia proxy X = (1/2) tr A A^T = |A|^2 / 2.
double moment(const Mat3& A);
double moment(const PhaseState& s);

/// Max over interior samples of |X'' - 2 E_K - 3 (gamma - 1) E_P| with X''
/// from second-order central differences on the uniform sample grid.
double virial_residual(const Trajectory& traj, double gamma);

struct GrowthReport {
  double diam_slope = 0.0;    // fitted late-time growth rate of the leading semi-axis
  double det_exponent = 0.0;  // fitted slope of log det A vs log t
  double t_lo = 0.0;
  double t_hi = 0.0;
  double diam_rms = 0.0;
  double logdet_rms = 0.0;
};

/// Least-squares growth rates over [t_lo, t_hi].  The window must satisfy
/// t_lo >= 1 and t_hi > 2 t_lo and lie inside the trajectory.
GrowthReport growth_fit(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace affine
