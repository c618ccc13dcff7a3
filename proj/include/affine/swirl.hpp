#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "affine/dynamics.hpp"
#include "affine/mat3.hpp"

namespace affine {

/// Reduced state of volume-preserving swirling flow: a planar rotation with
/// angle beta riding on an axisymmetric stretch (alpha, alpha, alpha^{-2}).
/// alpha^2 beta' is a first integral, so beta' is derived from the conserved
/// parameter beta_dot0 rather than integrated.
struct SwirlState {
  double alpha = 1.0;
  double alpha_dot = 0.0;
  double beta = 0.0;
  double beta_dot0 = 0.0;

  double beta_dot() const { return beta_dot0 / (alpha * alpha); }
};

/// alpha'' = (1 + 2 alpha^{-6})^{-1} [6 alpha^{-7} alpha'^2 + beta_dot0^2 alpha^{-3}].
double swirl_rhs(const SwirlState& s);

/// Conserved energy (1 + 2 alpha^{-6}) alpha'^2 + beta_dot0^2 alpha^{-2};
/// equals 3 alpha'(0)^2 + beta'(0)^2 on standard initial data alpha(0) = 1.
double swirl_energy(const SwirlState& s);

struct SwirlSample {
  double t = 0.0;
  double alpha = 0.0;
  double alpha_dot = 0.0;
  double beta = 0.0;
  double beta_dot = 0.0;
  double energy = 0.0;
  double kappa = 0.0;
};

struct SwirlTrajectory {
  double beta_dot0 = 0.0;
  double e0 = 0.0;
  std::vector<SwirlSample> samples;
  double max_energy_drift = 0.0;  // relative, tracked at every step
  bool used_collapse_variable = false;

  double t_final() const { return samples.back().t; }
};

struct SwirlIntegratorConfig {
  double step = 1e-4;
  double t_start = 0.0;
  double t_end = 10.0;
  int sample_stride = 100;
  /// Below this alpha the irrotational collapsing branch switches to the
  /// variable q = alpha^{-2}, whose slope tends to a constant.
  double collapse_switch = 0.2;
};

/// RK4 integration of (alpha, alpha', beta).  Time may run backward.
SwirlTrajectory integrate_swirl(const SwirlState& s0, const SwirlIntegratorConfig& cfg);

/// Block-diagonal embedding into the full phase space:
/// A = diag(alpha R(beta), alpha^{-2}); det A = 1 by construction.
PhaseState embed(const SwirlState& s);

/// Curvature [3 (alpha'/alpha)^2 - beta'^2] / (e0 (2 alpha^{-2} + alpha^4)^{1/2}).
double swirl_curvature(const SwirlState& s);

/// The bounded interval (t1, t2) on which the curvature is negative, located
/// by bisection of 3 (alpha' alpha)^2 - beta_dot0^2 to 1e-9.  Empty for
/// irrotational data (beta_dot0 = 0).
std::optional<std::pair<double, double>> negative_curvature_window(const SwirlTrajectory& traj);

/// Late-time description of the flow.  With rotation (beta_dot0 != 0) the
/// state approaches a matrix line with slope sqrt(e0) in the rotation plane;
/// without it the collapsing branch has alpha^{-2} growing at rate sqrt(2 e0).
struct SwirlAsymptote {
  bool irrotational = false;
  double slope = 0.0;      // sqrt(e0): growth rate of alpha (rotational branch)
  double offset = 0.0;     // intercept of the alpha line
  double beta_bar = 0.0;   // limiting rotation angle
  Mat3 A0;                 // limiting state: A(t) -> A0 + t A1
  Mat3 A1;
  double q_slope = 0.0;    // sqrt(2 e0): rate of alpha^{-2} on the collapsing branch
  double q_offset = 0.0;
};

SwirlAsymptote swirl_asymptote(const SwirlTrajectory& traj);

/// Shear flow from a nilpotent direction: A(t) = (I + t M) A0 with A'' = 0,
/// zero curvature, and identically vanishing pressure.
struct ShearFlow {
  Mat3 M;
  Mat3 A0;

  PhaseState at(double t) const;
};

ShearFlow shear_solution(const Mat3& M, const Mat3& A0);

}  // namespace affine
