#pragma once

#include <functional>
#include <memory>

#include "affine/dynamics.hpp"
#include "affine/mat3.hpp"
#include "affine/quad.hpp"

namespace affine {

/// Radial vacuum data on [0, 1]: a density profile rho0 that is positive on
/// [0, 1), vanishes at 1 like (1-s)^delta, and has rho0'(0) = 0, together with
/// the internal-energy profile eps0 it induces and the pressure p0.
///
/// Isentropic profiles evaluate in closed form.  User-supplied profiles carry
/// a Chebyshev-sampled table of the integral quotient with cubic
/// interpolation; within 1e-6 of the boundary eps0 switches to its linear
/// expansion eps0'(1) (s - 1) to avoid the 0/0 quotient.
class DensityProfile {
 public:
  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  bool isentropic() const { return isentropic_; }

  double rho0(double s) const { return rho0_(s); }
  double eps0(double s) const;
  double p0(double s) const { return (gamma_ - 1.0) * rho0(s) * eps0(s); }

  /// eps0'(1) = -1 / ((gamma - 1)(1 + delta)).
  double eps0_prime_at_boundary() const { return -1.0 / ((gamma_ - 1.0) * (1.0 + delta_)); }

  friend DensityProfile isentropic_profile(double gamma);
  friend DensityProfile profile_from_rho0(std::function<double(double)> rho0, double delta,
                                          double gamma);

 private:
  double gamma_ = 0.0;
  double delta_ = 0.0;
  bool isentropic_ = false;
  std::function<double(double)> rho0_;
  std::shared_ptr<const CubicHermite<double>> eps_table_;
};

/// Closed-form profile of a gas with p = rho^gamma:
/// rho0(s) = [((gamma-1)/(2 gamma)) (1 - s^2)]^{1/(gamma-1)},
/// eps0(s) = (1 - s^2) / (2 gamma), delta = 1/(gamma-1).
DensityProfile isentropic_profile(double gamma);

/// Ingest a user density profile with its declared boundary exponent.  The
/// profile class membership and the exponent are validated by sampling;
/// eps0 is built by adaptive quadrature of the defining integral.
DensityProfile profile_from_rho0(std::function<double(double)> rho0, double delta, double gamma);

/// The induced internal-energy profile as a standalone callable.
std::function<double(double)> eps0_from_rho0(std::function<double(double)> rho0, double delta,
                                             double gamma);

struct FluidSample {
  Vec3 x;
  Vec3 u;
  double rho = 0.0;
  double eps = 0.0;
  double p = 0.0;
  double s = 0.0;  // reference radius |A^{-1} x|
};

/// Reconstruct (u, rho, eps, p) at a spatial point of the moving domain:
/// u = A' A^{-1} x, rho = rho0(s)/det A, eps = eps0(s)/(det A)^{gamma-1},
/// p = (gamma - 1) rho eps.
FluidSample sample_compressible(const PhaseState& st, const DensityProfile& profile, const Vec3& x);

/// Interior pressure of the volume-preserving flow:
/// p = (1/2) Lambda [1 - |A^{-1} x|^2].
double sample_incompressible_pressure(const PhaseState& st, const Vec3& x);

/// Outward normal pressure derivative on the boundary: -Lambda |A^{-T} A^{-1} x|.
/// Negative exactly when Lambda > 0, which is the vacuum boundary condition.
double boundary_normal_pressure_derivative(const PhaseState& st, const Vec3& x);

/// Momentum-equation residual rho (A_ddot - J^{1-gamma} A^{-T}) A^{-1} x at an
/// interior point; vanishes to round-off when A_ddot is the system force.
Vec3 pde_residual(const PhaseState& st, const Mat3& A_ddot, const DensityProfile& profile,
                  const Vec3& x);

}  // namespace affine
