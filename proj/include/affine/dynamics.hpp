#pragma once

#include <limits>
#include <vector>

#include "affine/mat3.hpp"

namespace affine {

enum class Regime { compressible, incompressible };

/// Point of the matrix phase space: deformation gradient and its time
/// derivative, tagged with the flow regime.
struct PhaseState {
  Mat3 A;
  Mat3 A_dot;
  Regime regime = Regime::compressible;
  double gamma = 0.0;  // adiabatic index, meaningful in the compressible regime only

  static PhaseState compressible(const Mat3& A, const Mat3& A_dot, double gamma);
  static PhaseState incompressible(const Mat3& A, const Mat3& A_dot);
};

struct Energy {
  double total = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
};

/// Force N(A) = (det A)^{-gamma} cof A of the compressible system A'' = N(A).
Mat3 comp_rhs(const Mat3& A, double gamma);

/// Conserved energy E = E_K + E_P with E_K = |A'|^2/2 and
/// E_P = (det A)^{1-gamma} / (gamma - 1).
Energy comp_energy(const PhaseState& s);

/// Lambda(A, A') = tr (A' A^{-1})^2 / tr (A^{-T} A^{-1}).
double incomp_lambda(const Mat3& A, const Mat3& A_dot);

/// Right-hand side Lambda * A^{-T} of the volume-preserving system.
Mat3 incomp_rhs(const Mat3& A, const Mat3& A_dot);

/// Curvature of t -> A(t) as a curve in matrix space:
/// tr L^2 / (2 E_K (tr A^{-T} A^{-1})^{1/2}).  Its sign equals sign(Lambda).
double curvature(const Mat3& A, const Mat3& A_dot);

struct VelocityGradient {
  Mat3 L;      // A' A^{-1}
  Mat3 D;      // symmetric part (strain rate)
  Mat3 W;      // antisymmetric part; W = (1/2) omega x
  Vec3 omega;  // vorticity vector
};
VelocityGradient velocity_gradient(const PhaseState& s);

enum class Scheme { verlet, rk4 };

struct IntegratorConfig {
  double step = 1e-3;  // > 0; time direction comes from t_end - t_start
  double t_start = 0.0;
  double t_end = 1.0;
  // Scheme choice applies to the compressible system; the volume-preserving
  // force depends on the velocity, so that regime always integrates with RK4.
  Scheme scheme = Scheme::verlet;
  bool projection = true;  // incompressible constraint projection per step
  int sample_stride = 1;
  double det_floor = 1e-10;      // abort threshold for det A
  double constraint_tol = 1e-6;  // admissibility check on incompressible data
};

struct SampleDiagnostics {
  double energy = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double kappa = 0.0;  // incompressible curvature; 0 in the compressible regime
  double det = 0.0;
  double trace_L = 0.0;
  std::array<double, 3> axes{};  // stretch-tensor eigenvalues, descending
};

struct Sample {
  double t = 0.0;
  Mat3 A;
  Mat3 A_dot;
  SampleDiagnostics diag;
};

struct Trajectory {
  Regime regime = Regime::compressible;
  double gamma = 0.0;
  std::vector<Sample> samples;

  // Worst-case deviations tracked at every accepted step, not just at samples.
  double max_energy_drift = 0.0;    // relative to the initial energy
  double max_det_deviation = 0.0;   // |det A - 1|, incompressible regime
  double max_trace_L = 0.0;         // |tr A' A^{-1}|, incompressible regime
  double min_det = std::numeric_limits<double>::infinity();
  double max_projection_shift = 0.0;

  double t_begin() const { return samples.front().t; }
  double t_final() const { return samples.back().t; }
  /// Spacing of the uniformly strided samples (the trailing sample may sit
  /// closer when the step count is not a stride multiple).
  double sample_dt() const;
};

/// Fixed-step integration of either regime.  Time may run forward or backward
/// (t_end < t_start).  Throws StepFailure when det A crosses det_floor.
Trajectory integrate(const PhaseState& s0, const IntegratorConfig& cfg);

}  // namespace affine
