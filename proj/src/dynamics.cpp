#include "affine/dynamics.hpp"

#include <cmath>
#include <string>

namespace affine {

PhaseState PhaseState::compressible(const Mat3& A, const Mat3& A_dot, double gamma) {
  if (gamma <= 1.0) throw DomainError("adiabatic index must exceed 1, got " + std::to_string(gamma));
  if (det(A) <= 0.0) throw DomainError("compressible state needs det A > 0");
  return PhaseState{A, A_dot, Regime::compressible, gamma};
}

PhaseState PhaseState::incompressible(const Mat3& A, const Mat3& A_dot) {
  return PhaseState{A, A_dot, Regime::incompressible, 0.0};
}

Mat3 comp_rhs(const Mat3& A, double gamma) {
  if (gamma <= 1.0) throw DomainError("adiabatic index must exceed 1");
  const double d = det(A);
  if (d <= 0.0) throw DomainError("comp_rhs needs det A > 0, got " + std::to_string(d));
  return cof(A) * std::pow(d, -gamma);
}

Energy comp_energy(const PhaseState& s) {
  if (s.regime != Regime::compressible) throw DomainError("comp_energy needs a compressible state");
  const double d = det(s.A);
  if (d <= 0.0) throw DomainError("comp_energy needs det A > 0");
  Energy e;
  const double fn = s.A_dot.frobenius_norm();
  e.kinetic = 0.5 * fn * fn;
  e.potential = std::pow(d, 1.0 - s.gamma) / (s.gamma - 1.0);
  e.total = e.kinetic + e.potential;
  return e;
}

double incomp_lambda(const Mat3& A, const Mat3& A_dot) {
  const Mat3 Ainv = inv(A);
  const Mat3 L = A_dot * Ainv;
  const double denom_n = Ainv.frobenius_norm();  // tr A^{-T} A^{-1} = |A^{-1}|^2
  return (L * L).trace() / (denom_n * denom_n);
}

Mat3 incomp_rhs(const Mat3& A, const Mat3& A_dot) {
  const Mat3 Ainv = inv(A);
  const Mat3 L = A_dot * Ainv;
  const double denom_n = Ainv.frobenius_norm();
  const double lambda = (L * L).trace() / (denom_n * denom_n);
  return Ainv.transpose() * lambda;
}

double curvature(const Mat3& A, const Mat3& A_dot) {
  const double fn = A_dot.frobenius_norm();
  const double kinetic = 0.5 * fn * fn;
  if (kinetic <= 0.0) throw ZeroKineticEnergy("curvature is undefined at zero kinetic energy");
  const Mat3 Ainv = inv(A);
  const Mat3 L = A_dot * Ainv;
  return (L * L).trace() / (2.0 * kinetic * Ainv.frobenius_norm());
}

VelocityGradient velocity_gradient(const PhaseState& s) {
  VelocityGradient vg;
  vg.L = s.A_dot * inv(s.A);
  vg.D = (vg.L + vg.L.transpose()) * 0.5;
  vg.W = (vg.L - vg.L.transpose()) * 0.5;
  vg.omega = Vec3{vg.L(2, 1) - vg.L(1, 2), vg.L(0, 2) - vg.L(2, 0), vg.L(1, 0) - vg.L(0, 1)};
  return vg;
}

namespace {

struct StepMetrics {
  double det = 0.0;
  double trace_L = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
};

StepMetrics metrics_of(const Mat3& A, const Mat3& A_dot, Regime regime, double gamma) {
  StepMetrics m;
  m.det = det(A);
  const double fn = A_dot.frobenius_norm();
  m.kinetic = 0.5 * fn * fn;
  if (regime == Regime::compressible) {
    m.potential = std::pow(m.det, 1.0 - gamma) / (gamma - 1.0);
    m.energy = m.kinetic + m.potential;
  } else {
    m.trace_L = (A_dot * inv(A)).trace();
    m.energy = m.kinetic;
  }
  return m;
}

Sample make_sample(double t, const Mat3& A, const Mat3& A_dot, Regime regime, double gamma) {
  Sample s;
  s.t = t;
  s.A = A;
  s.A_dot = A_dot;
  const StepMetrics m = metrics_of(A, A_dot, regime, gamma);
  s.diag.det = m.det;
  s.diag.trace_L = m.trace_L;
  s.diag.energy = m.energy;
  s.diag.kinetic = m.kinetic;
  s.diag.potential = m.potential;
  if (regime == Regime::incompressible && m.kinetic > 0.0) {
    s.diag.kappa = curvature(A, A_dot);
  }
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double sum = 0;
      for (int k = 0; k < 3; ++k) sum += A(i, k) * A(j, k);
      g(i, j) = g(j, i) = sum;
    }
  const SymSpectrum sp = sym_eigen(g, 1e-6);
  for (int k = 0; k < 3; ++k)
    s.diag.axes[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, sp.eigenvalues[static_cast<std::size_t>(k)]));
  return s;
}

}  // namespace

double Trajectory::sample_dt() const {
  if (samples.size() < 2) throw TooFewSamples("trajectory has fewer than two samples");
  return samples[1].t - samples[0].t;
}

Trajectory integrate(const PhaseState& s0, const IntegratorConfig& cfg) {
  if (!(cfg.step > 0.0)) throw DomainError("integrator step must be positive");
  if (cfg.sample_stride < 1) throw DomainError("sample_stride must be at least 1");
  const double span = cfg.t_end - cfg.t_start;
  if (span == 0.0) throw DomainError("empty integration interval");
  if (cfg.step > std::abs(span)) throw DomainError("step exceeds the integration interval");
  if (!s0.A.finite() || !s0.A_dot.finite()) throw DomainError("non-finite initial state");

  const bool comp = s0.regime == Regime::compressible;
  if (comp) {
    if (s0.gamma <= 1.0) throw DomainError("adiabatic index must exceed 1");
    if (det(s0.A) <= 0.0) throw DomainError("compressible data needs det A > 0");
  } else {
    if (std::abs(det(s0.A) - 1.0) > cfg.constraint_tol)
      throw DomainError("incompressible data needs det A = 1");
    if (std::abs((s0.A_dot * inv(s0.A)).trace()) > cfg.constraint_tol)
      throw DomainError("incompressible data needs tr A' A^{-1} = 0");
  }

  const long long n_steps = std::llround(std::abs(span) / cfg.step);
  const double h = span / static_cast<double>(n_steps);

  Trajectory traj;
  traj.regime = s0.regime;
  traj.gamma = s0.gamma;

  Mat3 A = s0.A;
  Mat3 A_dot = s0.A_dot;
  double t = cfg.t_start;

  const StepMetrics m0 = metrics_of(A, A_dot, s0.regime, s0.gamma);
  const double e_ref = std::abs(m0.energy) > 0.0 ? std::abs(m0.energy) : 1.0;
  traj.min_det = m0.det;
  traj.samples.push_back(make_sample(t, A, A_dot, s0.regime, s0.gamma));

  Mat3 force = comp ? comp_rhs(A, s0.gamma) : incomp_rhs(A, A_dot);

  for (long long k = 1; k <= n_steps; ++k) {
    if (comp && cfg.scheme == Scheme::verlet) {
      // Stoermer-Verlet: half kick, drift, half kick.
      Mat3 half = A_dot + force * (0.5 * h);
      A += half * h;
      const double d = det(A);
      if (!(d > cfg.det_floor) || !A.finite()) {
        throw StepFailure("det A collapsed to " + std::to_string(d) + " at t = " +
                          std::to_string(cfg.t_start + h * static_cast<double>(k)) +
                          " (energy bound floor: det >= " +
                          std::to_string(std::pow((s0.gamma - 1.0) * m0.energy, 1.0 / (1.0 - s0.gamma))) + ")");
      }
      force = comp_rhs(A, s0.gamma);
      A_dot = half + force * (0.5 * h);
    } else {
      // Classic RK4 on the first-order system (A, A').
      auto rhs = [&](const Mat3& a, const Mat3& adot) {
        return comp ? comp_rhs(a, s0.gamma) : incomp_rhs(a, adot);
      };
      const Mat3 k1a = A_dot, k1v = force;
      const Mat3 k2a = A_dot + k1v * (0.5 * h), k2v = rhs(A + k1a * (0.5 * h), A_dot + k1v * (0.5 * h));
      const Mat3 k3a = A_dot + k2v * (0.5 * h), k3v = rhs(A + k2a * (0.5 * h), A_dot + k2v * (0.5 * h));
      const Mat3 k4a = A_dot + k3v * h, k4v = rhs(A + k3a * h, A_dot + k3v * h);
      A += (k1a + k2a * 2.0 + k3a * 2.0 + k4a) * (h / 6.0);
      A_dot += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
      const double d = det(A);
      if (!(d > cfg.det_floor) || !A.finite()) {
        throw StepFailure("det A collapsed to " + std::to_string(d) + " at t = " +
                          std::to_string(cfg.t_start + h * static_cast<double>(k)));
      }
      if (!comp && cfg.projection) {
        // The exact flow preserves det A = 1 and tr L = 0; the projection
        // removes discretization drift only, and its size is recorded.
        const Mat3 before_A = A;
        const Mat3 before_Adot = A_dot;
        A = A * std::pow(d, -1.0 / 3.0);
        const double tl = (A_dot * inv(A)).trace();
        A_dot -= A * (tl / 3.0);
        const double shift = std::max((A - before_A).frobenius_norm(),
                                      (A_dot - before_Adot).frobenius_norm());
        traj.max_projection_shift = std::max(traj.max_projection_shift, shift);
      }
      if (!comp) {
        force = incomp_rhs(A, A_dot);
      } else {
        force = comp_rhs(A, s0.gamma);
      }
    }
    t = cfg.t_start + h * static_cast<double>(k);

    const StepMetrics m = metrics_of(A, A_dot, s0.regime, s0.gamma);
    traj.min_det = std::min(traj.min_det, m.det);
    traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(m.energy - m0.energy) / e_ref);
    if (!comp) {
      traj.max_det_deviation = std::max(traj.max_det_deviation, std::abs(m.det - 1.0));
      traj.max_trace_L = std::max(traj.max_trace_L, std::abs(m.trace_L));
    }
    if (k % cfg.sample_stride == 0 || k == n_steps) {
      traj.samples.push_back(make_sample(t, A, A_dot, s0.regime, s0.gamma));
    }
  }
  return traj;
}

}  // namespace affine
