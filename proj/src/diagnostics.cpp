#include "affine/diagnostics.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace affine {

double moment(const Mat3& A) {
  const double n = A.frobenius_norm();
  return 0.5 * n * n;
}

double moment(const PhaseState& s) { return moment(s.A); }

double virial_residual(const Trajectory& traj, double gamma) {
  if (traj.regime != Regime::compressible)
    throw DomainError("virial residual is defined for compressible trajectories");
  if (traj.samples.size() < 3) throw TooFewSamples("need at least three samples");

  // Use the uniform part of the sample grid; a ragged trailing sample (step
  // count not a stride multiple) is dropped.
  std::size_t n = traj.samples.size();
  const double dt = traj.samples[1].t - traj.samples[0].t;
  if (std::abs((traj.samples[n - 1].t - traj.samples[n - 2].t) - dt) > 1e-9 * std::abs(dt)) --n;
  if (n < 3) throw TooFewSamples("need at least three uniformly spaced samples");

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x_prev = moment(traj.samples[i - 1].A);
    const double x_mid = moment(traj.samples[i].A);
    const double x_next = moment(traj.samples[i + 1].A);
    const double xdd = (x_next - 2.0 * x_mid + x_prev) / (dt * dt);
    const double expected =
        2.0 * traj.samples[i].diag.kinetic + 3.0 * (gamma - 1.0) * traj.samples[i].diag.potential;
    worst = std::max(worst, std::abs(xdd - expected));
  }
  return worst;
}

GrowthReport growth_fit(const Trajectory& traj, double t_lo, double t_hi) {
  if (!(t_lo >= 1.0) || !(t_hi > 2.0 * t_lo))
    throw WindowOutOfRange("fit window needs t_lo >= 1 and t_hi > 2 t_lo");
  if (traj.samples.empty() || traj.t_final() < t_hi || traj.t_begin() > t_lo)
    throw WindowOutOfRange("trajectory does not cover the fit window");

  std::vector<double> ts, axis, logt, logdet;
  for (const Sample& s : traj.samples) {
    if (s.t < t_lo || s.t > t_hi) continue;
    ts.push_back(s.t);
    axis.push_back(s.diag.axes[0]);
    logt.push_back(std::log(s.t));
    logdet.push_back(std::log(std::max(s.diag.det, 1e-300)));
  }
  if (ts.size() < 8) throw WindowOutOfRange("too few samples inside the fit window");

  const LineFit axis_fit = fit_line(ts, axis);
  const LineFit det_fit = fit_line(logt, logdet);

  GrowthReport r;
  r.diam_slope = axis_fit.slope;
  r.det_exponent = det_fit.slope;
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.diam_rms = axis_fit.rms;
  r.logdet_rms = det_fit.rms;
  return r;
}

}  // namespace affine
