#include "affine/fields.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace affine {

namespace {

constexpr double kBoundaryZone = 1e-6;  // width of the linear-expansion zone at s = 1
constexpr int kTableSize = 2048;

double clamp01(double s) { return std::min(1.0, std::max(0.0, s)); }

}  // namespace

double DensityProfile::eps0(double s) const {
  s = clamp01(s);
  if (isentropic_) return (1.0 - s * s) / (2.0 * gamma_);
  if (s >= 1.0 - kBoundaryZone) return (1.0 - s) / ((gamma_ - 1.0) * (1.0 + delta_));
  return (*eps_table_)(s);
}

DensityProfile isentropic_profile(double gamma) {
  if (gamma <= 1.0) throw DomainError("adiabatic index must exceed 1, got " + std::to_string(gamma));
  DensityProfile p;
  p.gamma_ = gamma;
  p.delta_ = 1.0 / (gamma - 1.0);
  p.isentropic_ = true;
  const double amp = (gamma - 1.0) / (2.0 * gamma);
  const double expo = 1.0 / (gamma - 1.0);
  p.rho0_ = [amp, expo](double s) {
    s = clamp01(s);
    return std::pow(amp * (1.0 - s * s), expo);
  };
  return p;
}

DensityProfile profile_from_rho0(std::function<double(double)> rho0, double delta, double gamma) {
  if (gamma <= 1.0) throw DomainError("adiabatic index must exceed 1");
  if (delta <= 0.0) throw DomainError("boundary exponent must be positive");

  // Membership checks by sampling: positivity on [0,1), vanishing at 1,
  // flatness at 0, and the declared boundary exponent.
  if (std::abs(rho0(1.0)) > 1e-12) throw DomainError("density profile must vanish at s = 1");
  for (int k = 0; k <= 256; ++k) {
    const double s = static_cast<double>(k) / 257.0;
    if (!(rho0(s) > 0.0)) throw DomainError("density profile must be positive on [0, 1)");
  }
  const double d0 = (rho0(1e-5) - rho0(0.0)) / 1e-5;
  if (std::abs(d0) > 1e-3) throw DomainError("density profile must be flat at s = 0");
  double c_prev = 0.0;
  for (int k = 3; k <= 6; ++k) {
    const double s = 1.0 - std::pow(10.0, -k);
    const double c = rho0(s) / std::pow(1.0 - s, delta);
    if (!(c > 0.0) || !std::isfinite(c))
      throw DomainError("declared boundary exponent does not match the profile");
    if (k > 3 && (c / c_prev > 2.0 || c_prev / c > 2.0))
      throw DomainError("declared boundary exponent does not match the profile");
    c_prev = c;
  }

  DensityProfile p;
  p.gamma_ = gamma;
  p.delta_ = delta;
  p.isentropic_ = false;
  p.rho0_ = rho0;

  // Chebyshev-extrema nodes on [0, 1]; the integral accumulates from s = 1
  // down so each segment is integrated once.
  std::vector<double> nodes(kTableSize);
  for (int j = 0; j < kTableSize; ++j)
    nodes[static_cast<std::size_t>(j)] = 0.5 * (1.0 - std::cos(M_PI * j / (kTableSize - 1)));
  nodes.front() = 0.0;
  nodes.back() = 1.0;

  // Per-segment tolerance scales with the segment integral itself so the
  // accumulated error vanishes toward s = 1 along with the quotient's
  // denominator.
  std::function<double(double)> integrand = [rho0](double s) { return s * rho0(s); };
  std::vector<double> integral(kTableSize, 0.0);
  for (int j = kTableSize - 2; j >= 0; --j) {
    const double a = nodes[static_cast<std::size_t>(j)];
    const double b = nodes[static_cast<std::size_t>(j) + 1];
    const double rough = std::abs(b - a) * integrand(0.5 * (a + b));
    integral[static_cast<std::size_t>(j)] =
        integral[static_cast<std::size_t>(j) + 1] +
        adaptive_simpson(integrand, a, b, 1e-15 + 1e-12 * rough);
  }

  // Node slopes come from the quotient rule eps0' = -s/(gamma-1) - eps0 rho0'/rho0
  // with rho0' by five-point differences of the user callable; interpolation
  // with exact slopes keeps the reconstructed pressure gradient accurate.
  auto rho0_prime = [&rho0](double s) {
    const double h = std::min({1e-4, (1.0 - s) / 4.0 + 1e-9, s / 4.0 + 1e-9});
    return (-rho0(s + 2 * h) + 8.0 * rho0(s + h) - 8.0 * rho0(s - h) + rho0(s - 2 * h)) /
           (12.0 * h);
  };
  const double edge_slope = -1.0 / ((gamma - 1.0) * (1.0 + delta));
  std::vector<double> eps(kTableSize), slope(kTableSize);
  for (int j = 0; j < kTableSize; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const double s = nodes[idx];
    if (s >= 1.0 - kBoundaryZone) {
      eps[idx] = (1.0 - s) / ((gamma - 1.0) * (1.0 + delta));
      slope[idx] = edge_slope;
    } else {
      eps[idx] = integral[idx] / ((gamma - 1.0) * rho0(s));
      slope[idx] = -s / (gamma - 1.0) - eps[idx] * rho0_prime(s) / rho0(s);
    }
  }
  p.eps_table_ = std::make_shared<CubicHermite<double>>(std::move(nodes), std::move(eps),
                                                        std::move(slope));
  return p;
}

std::function<double(double)> eps0_from_rho0(std::function<double(double)> rho0, double delta,
                                             double gamma) {
  const DensityProfile p = profile_from_rho0(std::move(rho0), delta, gamma);
  return [p](double s) { return p.eps0(s); };
}

FluidSample sample_compressible(const PhaseState& st, const DensityProfile& profile, const Vec3& x) {
  if (st.regime != Regime::compressible) throw DomainError("sample_compressible needs a compressible state");
  const Mat3 Ainv = inv(st.A);
  const Vec3 y = Ainv * x;
  double s = y.norm();
  if (s > 1.0 + 1e-12) throw OutsideDomain("point lies outside the fluid domain: |A^{-1} x| = " + std::to_string(s));
  // Points placed on the boundary land within round-off of s = 1; snap them
  // so the vacuum there is exact.
  s = (s > 1.0 - 1e-12) ? 1.0 : s;
  const double J = det(st.A);

  FluidSample out;
  out.x = x;
  out.s = s;
  out.u = st.A_dot * y;
  out.rho = profile.rho0(s) / J;
  out.eps = profile.eps0(s) / std::pow(J, st.gamma - 1.0);
  out.p = (st.gamma - 1.0) * out.rho * out.eps;
  return out;
}

double sample_incompressible_pressure(const PhaseState& st, const Vec3& x) {
  if (st.regime != Regime::incompressible)
    throw DomainError("incompressible pressure needs an incompressible state");
  const Mat3 Ainv = inv(st.A);
  const Vec3 y = Ainv * x;
  const double s = y.norm();
  if (s > 1.0 + 1e-12) throw OutsideDomain("point lies outside the fluid domain");
  const double lambda = incomp_lambda(st.A, st.A_dot);
  return 0.5 * lambda * std::max(0.0, 1.0 - s * s);
}

double boundary_normal_pressure_derivative(const PhaseState& st, const Vec3& x) {
  const Mat3 Ainv = inv(st.A);
  const Vec3 y = Ainv * x;
  if (std::abs(y.norm() - 1.0) > 1e-10)
    throw NotOnBoundary("point is not on the boundary: |A^{-1} x| = " + std::to_string(y.norm()));
  const double lambda = incomp_lambda(st.A, st.A_dot);
  // grad p = -Lambda A^{-T} A^{-1} x and the unit normal is parallel to it,
  // so the normal derivative carries the full length |A^{-T} A^{-1} x|.
  const Vec3 grad_dir = Ainv.transpose() * y;
  return -lambda * grad_dir.norm();
}

Vec3 pde_residual(const PhaseState& st, const Mat3& A_ddot, const DensityProfile& profile,
                  const Vec3& x) {
  if (st.regime != Regime::compressible) throw DomainError("pde_residual needs a compressible state");
  const Mat3 Ainv = inv(st.A);
  const Vec3 y = Ainv * x;
  double s = y.norm();
  if (s > 1.0 + 1e-12) throw OutsideDomain("point lies outside the fluid domain");
  s = std::min(s, 1.0);
  const double J = det(st.A);
  const double rho = profile.rho0(s) / J;
  const Mat3 gap = A_ddot - Ainv.transpose() * std::pow(J, 1.0 - st.gamma);
  return (gap * y) * rho;
}

}  // namespace affine
