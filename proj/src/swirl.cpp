#include "affine/swirl.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace affine {

double swirl_rhs(const SwirlState& s) {
  if (!(s.alpha > 0.0)) throw DomainError("swirl state needs alpha > 0");
  const double a = s.alpha;
  const double a3 = a * a * a;
  const double a6 = a3 * a3;
  return (6.0 * s.alpha_dot * s.alpha_dot / (a6 * a) + s.beta_dot0 * s.beta_dot0 / a3) /
         (1.0 + 2.0 / a6);
}

double swirl_energy(const SwirlState& s) {
  if (!(s.alpha > 0.0)) throw DomainError("swirl state needs alpha > 0");
  const double a = s.alpha;
  const double a6 = std::pow(a, 6.0);
  return (1.0 + 2.0 / a6) * s.alpha_dot * s.alpha_dot + s.beta_dot0 * s.beta_dot0 / (a * a);
}

double swirl_curvature(const SwirlState& s) {
  const double e0 = swirl_energy(s);
  if (!(e0 > 0.0)) throw ZeroEnergy("curvature is undefined at zero energy");
  const double a = s.alpha;
  const double ratio = s.alpha_dot / a;
  const double bd = s.beta_dot();
  return (3.0 * ratio * ratio - bd * bd) / (e0 * std::sqrt(2.0 / (a * a) + std::pow(a, 4.0)));
}

PhaseState embed(const SwirlState& s) {
  if (!(s.alpha > 0.0)) throw DomainError("swirl state needs alpha > 0");
  const double a = s.alpha;
  const double c = std::cos(s.beta);
  const double sn = std::sin(s.beta);
  const double bd = s.beta_dot();

  Mat3 A;
  A(0, 0) = a * c;
  A(0, 1) = a * sn;
  A(1, 0) = -a * sn;
  A(1, 1) = a * c;
  A(2, 2) = 1.0 / (a * a);

  // Top block (alpha' I + alpha beta' W) R(beta); axis entry -2 alpha^{-3} alpha'.
  Mat3 Ad;
  Ad(0, 0) = s.alpha_dot * c - a * bd * sn;
  Ad(0, 1) = s.alpha_dot * sn + a * bd * c;
  Ad(1, 0) = -(s.alpha_dot * sn + a * bd * c);
  Ad(1, 1) = s.alpha_dot * c - a * bd * sn;
  Ad(2, 2) = -2.0 * s.alpha_dot / (a * a * a);

  return PhaseState::incompressible(A, Ad);
}

namespace {

struct ReducedState {
  double a, v, b;
};

ReducedState rk4_step(const ReducedState& y, double h, double beta_dot0) {
  auto f = [beta_dot0](const ReducedState& s) -> ReducedState {
    SwirlState w{s.a, s.v, s.b, beta_dot0};
    return {s.v, swirl_rhs(w), beta_dot0 / (s.a * s.a)};
  };
  const ReducedState k1 = f(y);
  const ReducedState k2 = f({y.a + 0.5 * h * k1.a, y.v + 0.5 * h * k1.v, y.b + 0.5 * h * k1.b});
  const ReducedState k3 = f({y.a + 0.5 * h * k2.a, y.v + 0.5 * h * k2.v, y.b + 0.5 * h * k2.b});
  const ReducedState k4 = f({y.a + h * k3.a, y.v + h * k3.v, y.b + h * k3.b});
  return {y.a + h / 6.0 * (k1.a + 2 * k2.a + 2 * k3.a + k4.a),
          y.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v),
          y.b + h / 6.0 * (k1.b + 2 * k2.b + 2 * k3.b + k4.b)};
}

// Collapsing irrotational branch in q = alpha^{-2}: dq/dt = sqrt(4 e0 q^3 / (1 + 2 q^3)),
// monotone with slope tending to sqrt(2 e0).
double q_rate(double q, double e0) {
  const double q3 = q * q * q;
  return std::sqrt(4.0 * e0 * q3 / (1.0 + 2.0 * q3));
}

double rk4_step_q(double q, double h, double e0) {
  const double k1 = q_rate(q, e0);
  const double k2 = q_rate(q + 0.5 * h * k1, e0);
  const double k3 = q_rate(q + 0.5 * h * k2, e0);
  const double k4 = q_rate(q + h * k3, e0);
  return q + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

SwirlSample make_sample(double t, const SwirlState& s) {
  SwirlSample out;
  out.t = t;
  out.alpha = s.alpha;
  out.alpha_dot = s.alpha_dot;
  out.beta = s.beta;
  out.beta_dot = s.beta_dot();
  out.energy = swirl_energy(s);
  out.kappa = out.energy > 0.0 ? swirl_curvature(s) : 0.0;
  return out;
}

}  // namespace

SwirlTrajectory integrate_swirl(const SwirlState& s0, const SwirlIntegratorConfig& cfg) {
  if (!(cfg.step > 0.0)) throw DomainError("integrator step must be positive");
  if (cfg.sample_stride < 1) throw DomainError("sample_stride must be at least 1");
  if (!(s0.alpha > 0.0)) throw DomainError("swirl data needs alpha > 0");
  const double span = cfg.t_end - cfg.t_start;
  if (span == 0.0) throw DomainError("empty integration interval");

  const long long n_steps = std::llround(std::abs(span) / cfg.step);
  if (n_steps < 1) throw DomainError("step exceeds the integration interval");
  const double h = span / static_cast<double>(n_steps);

  SwirlTrajectory traj;
  traj.beta_dot0 = s0.beta_dot0;
  traj.e0 = swirl_energy(s0);

  ReducedState y{s0.alpha, s0.alpha_dot, s0.beta};
  bool q_mode = false;
  double q = 0.0;

  traj.samples.push_back(make_sample(cfg.t_start, s0));

  for (long long k = 1; k <= n_steps; ++k) {
    if (!q_mode) {
      y = rk4_step(y, h, s0.beta_dot0);
      if (!(y.a > 0.0) || !std::isfinite(y.a))
        throw StepFailure("alpha collapsed at t = " + std::to_string(cfg.t_start + h * static_cast<double>(k)));
      // Switch once the irrotational collapse outruns the alpha variable,
      // i.e. alpha is small and still shrinking along the integration direction.
      if (s0.beta_dot0 == 0.0 && y.a < cfg.collapse_switch && y.v * h < 0.0) {
        q_mode = true;
        traj.used_collapse_variable = true;
        q = 1.0 / (y.a * y.a);
      }
    } else {
      q = rk4_step_q(q, std::abs(h), traj.e0);
      y.a = 1.0 / std::sqrt(q);
      const double q3 = q * q * q;
      const double speed = std::sqrt(traj.e0 / (1.0 + 2.0 * q3));
      y.v = (h > 0.0) ? -speed : speed;
    }

    const double t = cfg.t_start + h * static_cast<double>(k);
    const SwirlState now{y.a, y.v, y.b, s0.beta_dot0};
    const double e = swirl_energy(now);
    traj.max_energy_drift =
        std::max(traj.max_energy_drift, std::abs(e - traj.e0) / std::max(traj.e0, 1e-300));
    if (k % cfg.sample_stride == 0 || k == n_steps) {
      traj.samples.push_back(make_sample(t, now));
    }
  }
  return traj;
}

std::optional<std::pair<double, double>> negative_curvature_window(const SwirlTrajectory& traj) {
  if (traj.beta_dot0 == 0.0) return std::nullopt;
  const double target = traj.beta_dot0 * traj.beta_dot0;
  auto sign_fn = [target](const SwirlSample& s) {
    const double g = 3.0 * s.alpha_dot * s.alpha_dot * s.alpha * s.alpha - target;
    return g;
  };

  // Refine a bracketing sample interval by bisection; each probe re-integrates
  // from the left sample with a fine fixed step.
  auto refine = [&](const SwirlSample& lo, const SwirlSample& hi) {
    double ta = lo.t, tb = hi.t;
    ReducedState base{lo.alpha, lo.alpha_dot, lo.beta};
    auto value_at = [&](double t) {
      ReducedState y = base;
      const int sub = 64;
      const double dh = (t - lo.t) / sub;
      if (dh != 0.0)
        for (int i = 0; i < sub; ++i) y = rk4_step(y, dh, traj.beta_dot0);
      return 3.0 * y.v * y.v * y.a * y.a - target;
    };
    double fa = sign_fn(lo);
    while (tb - ta > 1e-9) {
      const double tm = 0.5 * (ta + tb);
      const double fm = value_at(tm);
      if ((fa <= 0.0) == (fm <= 0.0)) {
        ta = tm;
        fa = fm;
      } else {
        tb = tm;
      }
    }
    return 0.5 * (ta + tb);
  };

  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const double ga = sign_fn(traj.samples[i]);
    const double gb = sign_fn(traj.samples[i + 1]);
    if ((ga <= 0.0) != (gb <= 0.0)) crossings.push_back(refine(traj.samples[i], traj.samples[i + 1]));
  }
  if (crossings.size() < 2)
    throw WindowNotBracketed("trajectory does not bracket the negative-curvature window");
  return std::make_pair(crossings.front(), crossings.back());
}

namespace {

// Composite Simpson over the uniform sample grid (trapezoid fallback for the
// ragged trailing interval).
double integrate_samples(const std::vector<SwirlSample>& samples,
                         const std::function<double(const SwirlSample&)>& f) {
  double acc = 0.0;
  std::size_t i = 0;
  const double dt = samples.size() > 1 ? samples[1].t - samples[0].t : 0.0;
  while (i + 2 < samples.size()) {
    const double d1 = samples[i + 1].t - samples[i].t;
    const double d2 = samples[i + 2].t - samples[i + 1].t;
    if (std::abs(d1 - dt) < 1e-9 * std::abs(dt) && std::abs(d2 - dt) < 1e-9 * std::abs(dt)) {
      acc += dt / 3.0 * (f(samples[i]) + 4.0 * f(samples[i + 1]) + f(samples[i + 2]));
      i += 2;
    } else {
      break;
    }
  }
  for (; i + 1 < samples.size(); ++i) {
    acc += 0.5 * (samples[i + 1].t - samples[i].t) * (f(samples[i]) + f(samples[i + 1]));
  }
  return acc;
}

}  // namespace

SwirlAsymptote swirl_asymptote(const SwirlTrajectory& traj) {
  if (traj.samples.size() < 8) throw InsufficientSpan("too few samples for asymptotics");
  const double e0 = traj.e0;
  if (!(e0 > 0.0)) throw ZeroEnergy("zero-energy state has no growth asymptote");
  const SwirlSample& last = traj.samples.back();
  const double root_e0 = std::sqrt(e0);

  SwirlAsymptote out;
  if (traj.beta_dot0 != 0.0) {
    if (root_e0 - last.alpha_dot > 0.05 * root_e0)
      throw InsufficientSpan("trajectory has not reached the linear-growth regime");

    // offset = 1 - int_0^inf (sqrt(e0) - alpha'); the truncated tail follows
    // the leading expansion beta_dot0^2 / (2 e0 alpha).
    const double quad =
        integrate_samples(traj.samples, [&](const SwirlSample& s) { return root_e0 - s.alpha_dot; });
    const double tail = traj.beta_dot0 * traj.beta_dot0 / (2.0 * e0 * last.alpha);
    out.slope = root_e0;
    out.offset = 1.0 - (quad + tail);
    out.beta_bar = last.beta + traj.beta_dot0 / (root_e0 * last.alpha);

    const double c = std::cos(out.beta_bar);
    const double sn = std::sin(out.beta_bar);
    Mat3 rot;
    rot(0, 0) = c;
    rot(0, 1) = sn;
    rot(1, 0) = -sn;
    rot(1, 1) = c;
    Mat3 top = Mat3::identity() * out.offset;
    top(2, 2) = 0.0;
    Mat3 w;
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    out.A1 = (Mat3::identity() * root_e0) * rot;
    out.A1(2, 2) = 0.0;
    out.A0 = (top - w * (traj.beta_dot0 / root_e0)) * rot;
    out.A0(2, 2) = 0.0;
    return out;
  }

  // Irrotational collapsing branch: alpha^{-2} = sqrt(2 e0) t + q_offset + o(1).
  out.irrotational = true;
  out.slope = root_e0;
  out.q_slope = std::sqrt(2.0 * e0);
  const double q_rate_end = -2.0 * last.alpha_dot / std::pow(last.alpha, 3.0);
  if (out.q_slope - q_rate_end > 0.05 * out.q_slope)
    throw InsufficientSpan("collapsing branch has not reached the linear regime");
  const double quad = integrate_samples(traj.samples, [&](const SwirlSample& s) {
    return -2.0 * s.alpha_dot / std::pow(s.alpha, 3.0) - out.q_slope;
  });
  // The deficit sqrt(2 e0) - q' decays like s^{-3}; the truncated tail is the
  // endpoint value times t/2.
  const double tail = (out.q_slope - q_rate_end) * last.t / 2.0;
  out.q_offset = 1.0 + quad - tail;
  out.A1 = Mat3::diag(0.0, 0.0, out.q_slope);
  out.A0 = Mat3::diag(0.0, 0.0, out.q_offset);
  return out;
}

PhaseState ShearFlow::at(double t) const {
  const Mat3 a = (Mat3::identity() + M * t) * A0;
  return PhaseState::incompressible(a, M * A0);
}

ShearFlow shear_solution(const Mat3& M, const Mat3& A0) {
  const Mat3 m3 = M * M * M;
  const double scale = std::max(1.0, std::pow(M.frobenius_norm(), 3.0));
  if (m3.frobenius_norm() > 1e-12 * scale) throw NotNilpotent("direction matrix is not nilpotent");
  if (std::abs(det(A0) - 1.0) > 1e-12) throw NotUnimodular("base point must have unit determinant");
  return ShearFlow{M, A0};
}

}  // namespace affine
