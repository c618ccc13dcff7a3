#include "affine/scattering.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "affine/fit.hpp"
#include "affine/quad.hpp"

namespace affine {

std::array<double, 4> det_polynomial(const AsymptoticState& st) {
  // det(A0 + t A1) is multilinear in the columns; the mixed coefficients are
  // directional derivatives of det through the cofactor.
  return {det(st.A0), (cof(st.A0).transpose() * st.A1).trace(),
          (cof(st.A1).transpose() * st.A0).trace(), det(st.A1)};
}

DegreeData degree_exponents(const AsymptoticState& st, double gamma) {
  if (gamma <= 1.0) throw DomainError("adiabatic index must exceed 1");
  const std::array<double, 4> beta = det_polynomial(st);
  const double scale = std::max(st.A0.frobenius_norm(), st.A1.frobenius_norm());
  const double det_tol = 1e-12 * std::max(1.0, scale * scale * scale);

  int d = 0;
  for (int j = 3; j >= 1; --j) {
    if (std::abs(beta[static_cast<std::size_t>(j)]) > det_tol) {
      d = j;
      break;
    }
  }
  if (d == 0 || beta[static_cast<std::size_t>(d)] <= 0.0)
    throw DetNotDiverging("det(A0 + t A1) does not diverge to +infinity");

  // Cofactor polynomial C0 + C1 t + C2 t^2 by interpolation at t = -1, 0, 1.
  const Mat3 cm = cof(st.at(-1.0));
  const Mat3 c0 = cof(st.A0);
  const Mat3 cp = cof(st.at(1.0));
  const Mat3 c1 = (cp - cm) * 0.5;
  const Mat3 c2 = (cp + cm) * 0.5 - c0;
  const double cof_tol = 1e-12 * std::max(1.0, scale * scale);
  int b = 0;
  if (c2.frobenius_norm() > cof_tol)
    b = 2;
  else if (c1.frobenius_norm() > cof_tol)
    b = 1;

  DegreeData dd;
  dd.d = d;
  dd.b = b;
  dd.a = b - d;
  dd.mu = d * (gamma - 1.0) - dd.a - 2.0;

  const bool consistent = (d == 3 && dd.a == -1) || (d == 2 && dd.a == 0) ||
                          (d == 1 && (dd.a == 0 || dd.a == 1));
  if (!consistent)
    throw Error("degree classification is internally inconsistent (d = " + std::to_string(d) +
                ", a = " + std::to_string(dd.a) + ")");
  return dd;
}

namespace {

// Force along the asymptotic line, safe for arbitrarily large times: the
// determinant is evaluated through its polynomial, and the force is treated
// as zero once the determinant passes 1e100 (the true value is below 1e-60).
Mat3 line_force(const AsymptoticState& st, const std::array<double, 4>& beta, double gamma,
                double sigma) {
  const double d = beta[0] + sigma * (beta[1] + sigma * (beta[2] + sigma * beta[3]));
  if (d > 1e100) return Mat3::zero();
  if (!(d > 0.0)) throw DomainError("asymptotic line leaves the positive-determinant region");
  return cof(st.at(sigma)) * std::pow(d, -gamma);
}

struct TailMoments {
  Mat3 plain;     // integral of N over [t0, infinity)
  Mat3 weighted;  // integral of sigma N
};

// Improper force moments along an asymptotic line: composite Gauss under
// sigma = t0 e^x up to e^40 t0, then the leading power-law remainder
// K sigma^{-mu-2} integrated in closed form.
TailMoments line_force_tail(const AsymptoticState& st, double gamma, double t0, double mu) {
  const std::array<double, 4> beta = det_polynomial(st);
  TailMoments out;
  const double horizon = 40.0;
  const int intervals = 640;
  const double dx = horizon / intervals;
  for (int j = 0; j < intervals; ++j) {
    const double xa = j * dx;
    for (int g = 0; g < 3; ++g) {
      const double x = xa + 0.5 * dx * (1.0 + gauss3_x[g]);
      const double sigma = t0 * std::exp(x);
      const Mat3 val = line_force(st, beta, gamma, sigma) * (gauss3_w[g] * 0.5 * dx * sigma);
      out.plain += val;
      out.weighted += val * sigma;
    }
  }
  const double sigma_big = t0 * std::exp(horizon);
  const Mat3 n_big = line_force(st, beta, gamma, sigma_big);
  // N(sigma) ~ n_big (sigma / sigma_big)^{-mu-2} beyond the horizon.
  out.plain += n_big * (sigma_big / (mu + 1.0));
  out.weighted += n_big * (sigma_big * sigma_big / mu);
  return out;
}

}  // namespace

CauchySolution solve_cauchy_at_infinity(const AsymptoticState& st, double gamma,
                                        const SolveConfig& cfg) {
  const DegreeData dd = degree_exponents(st, gamma);
  const bool weighted = weighted_branch(dd);
  if (weighted) {
    if (!(gamma > 5.0))
      throw PreconditionMu("the a = d = 1 family needs gamma > 5, got " + std::to_string(gamma));
  } else if (!(dd.mu > 0.0)) {
    throw PreconditionMu("decay margin mu = " + std::to_string(dd.mu) + " is not positive");
  }

  if (cfg.t_max_factor < 10.0) throw DomainError("grid needs T_max >= 10 T");
  if (cfg.grid_nodes < 16) throw DomainError("grid needs at least 16 nodes");

  const std::array<double, 4> beta = det_polynomial(st);
  std::vector<double> t_sequence;
  std::string failure = "no contraction";

  for (int attempt = 0; attempt <= cfg.max_doublings; ++attempt) {
    const double T = cfg.T0 * std::pow(2.0, attempt);
    t_sequence.push_back(T);
    const double t_max = cfg.t_max_factor * T;
    const std::vector<double> nodes = geometric_grid(T, t_max, cfg.grid_nodes);
    const std::size_t n = nodes.size();

    bool admissible = true;
    for (double x : nodes) {
      const double dval = beta[0] + x * (beta[1] + x * (beta[2] + x * beta[3]));
      if (!(dval > 0.0)) {
        admissible = false;
        break;
      }
    }
    if (!admissible) {
      failure = "asymptotic line is not invertible on [T, T_max]";
      continue;
    }

    TailMoments tail;
    try {
      tail = line_force_tail(st, gamma, t_max, weighted ? gamma - 4.0 : dd.mu);
    } catch (const DomainError&) {
      failure = "asymptotic line is not invertible beyond T_max";
      continue;
    }

    std::vector<Mat3> B(n, Mat3::zero());
    auto norm_at = [&](std::size_t j, const Mat3& v) {
      return (weighted ? nodes[j] / T : 1.0) * v.frobenius_norm();
    };

    double prev_update = -1.0;
    double ratio = 0.0;
    bool diverged = false;
    bool converged = false;
    int iters = 0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      const CubicHermite<Mat3> interp(nodes, B);
      bool bad = false;
      const IntervalMoments mom = gauss_interval_moments(nodes, [&](double sigma, int) -> Mat3 {
        const Mat3 a = st.at(sigma) + interp(sigma);
        const double dv = det(a);
        if (!(dv > 0.0)) {
          bad = true;
          return Mat3::zero();
        }
        return cof(a) * std::pow(dv, -gamma);
      });
      if (bad) {
        diverged = true;
        break;
      }

      // Right-cumulative moments give S(B)(t_j) = G2 - t_j G1 in one sweep.
      std::vector<Mat3> g1(n), g2(n);
      g1[n - 1] = tail.plain;
      g2[n - 1] = tail.weighted;
      for (std::size_t j = n - 1; j-- > 0;) {
        g1[j] = g1[j + 1] + mom.plain[j];
        g2[j] = g2[j + 1] + mom.weighted[j];
      }

      double update = 0.0;
      double sup_new = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const Mat3 s_j = g2[j] - g1[j] * nodes[j];
        update = std::max(update, norm_at(j, s_j - B[j]));
        sup_new = std::max(sup_new, norm_at(j, s_j));
        B[j] = s_j;
      }
      iters = it + 1;

      if (prev_update > 0.0) {
        ratio = update / prev_update;
        if (ratio >= 1.0) {
          diverged = true;
          break;
        }
        // Weak first contraction: enlarge T rather than grind.
        if (it == 1 && ratio >= 0.5 && attempt < cfg.max_doublings) {
          diverged = true;
          break;
        }
      }
      prev_update = update;
      if (update < cfg.fp_tol * std::max(1.0, sup_new)) {
        converged = true;
        break;
      }
    }
    if (diverged || !converged) {
      failure = diverged ? "fixed-point iteration is not contracting" : "fixed point did not settle";
      continue;
    }

    CauchySolution sol;
    sol.degree = dd;
    sol.contraction_factor = ratio;
    sol.iterations = iters;
    sol.T_sequence = t_sequence;
    sol.grid.T = T;
    sol.grid.T_max = t_max;
    sol.grid.nodes = nodes;
    sol.grid.B = B;
    sol.grid.weighted = weighted;

    double inv_sup = 0.0;
    for (std::size_t j = 0; j < n; j += 8) inv_sup = std::max(inv_sup, operator_norm(inv(st.at(nodes[j]))));
    sol.ball_radius = 0.5 / inv_sup;
    for (std::size_t j = 0; j < n; ++j) sol.sup_B = std::max(sol.sup_B, norm_at(j, B[j]));
    sol.tail_error = 3.0 * operator_norm(inv(st.at(t_max))) * B[n - 1].frobenius_norm() *
                     (tail.weighted - tail.plain * T).frobenius_norm();

    // Derivative of the double integral collapses to minus the force integral.
    const CubicHermite<Mat3> interp(nodes, B);
    bool bad = false;
    const IntervalMoments mom = gauss_interval_moments(nodes, [&](double sigma, int) -> Mat3 {
      const Mat3 a = st.at(sigma) + interp(sigma);
      const double dv = det(a);
      if (!(dv > 0.0)) {
        bad = true;
        return Mat3::zero();
      }
      return cof(a) * std::pow(dv, -gamma);
    });
    Mat3 g1 = tail.plain;
    for (std::size_t j = mom.plain.size(); j-- > 0;) g1 += mom.plain[j];
    if (bad) throw NoContraction("fixed point left the admissible region");

    const Mat3 a_T = st.at(T) + B[0];
    const Mat3 adot_T = st.A1 - g1;

    IntegratorConfig back;
    back.step = std::min(cfg.back_step, T / 1e4);
    back.t_start = T;
    back.t_end = 0.0;
    back.scheme = Scheme::verlet;
    back.sample_stride = static_cast<int>(std::llround(T / back.step));
    const Trajectory down = integrate(PhaseState::compressible(a_T, adot_T, gamma), back);
    sol.initial_state =
        PhaseState::compressible(down.samples.back().A, down.samples.back().A_dot, gamma);
    return sol;
  }

  std::ostringstream msg;
  msg << failure << " after matching times";
  for (double t : t_sequence) msg << " " << t;
  throw NoContraction(msg.str());
}

ExtractedAsymptote extract_asymptote(const Trajectory& traj, double gamma, const TailConfig& cfg) {
  if (traj.regime != Regime::compressible)
    throw DomainError("asymptote extraction needs a compressible trajectory");
  if (traj.samples.size() < 4) throw TooFewSamples("trajectory has too few samples");
  const double t_end = traj.t_final();
  if (!(t_end > 0.0)) throw DomainError("asymptote extraction needs forward time");

  // Force decay over the last decade gates the whole construction.
  std::vector<double> ts, ns;
  for (const Sample& s : traj.samples) {
    if (s.t < t_end / cfg.decade || s.t <= 0.0) continue;
    ts.push_back(s.t);
    ns.push_back(comp_rhs(s.A, gamma).frobenius_norm());
  }
  if (static_cast<int>(ts.size()) < cfg.min_samples)
    throw TooFewSamples("too few samples in the decay window");
  const LineFit nfit = fit_loglog(ts, ns);
  if (nfit.slope >= -2.0)
    throw InsufficientDecay("force decay exponent " + std::to_string(nfit.slope) +
                            " is too shallow for a linear asymptote");

  const Sample& last = traj.samples.back();
  const Mat3 a1_base = last.A_dot;
  const Mat3 a0_base = last.A - last.A_dot * t_end;

  ExtractedAsymptote out;
  out.state = AsymptoticState{a0_base, a1_base};
  out.n_decay_exponent = nfit.slope;

  const double mu_hat = std::max(0.05, -nfit.slope - 2.0);
  Mat3 m1_final, m2_final;
  for (int it = 0; it < 12; ++it) {
    ++out.iterations;
    const TailMoments tail = line_force_tail(out.state, gamma, t_end, mu_hat);
    const Mat3 a1_new = a1_base + tail.plain;
    const Mat3 a0_new = a0_base - tail.weighted;
    const double delta = std::max((a1_new - out.state.A1).frobenius_norm(),
                                  (a0_new - out.state.A0).frobenius_norm());
    out.state.A0 = a0_new;
    out.state.A1 = a1_new;
    m1_final = tail.plain;
    m2_final = tail.weighted;
    if (delta < 1e-14 * std::max(1.0, out.state.A1.frobenius_norm())) break;
  }

  // Second-order budget: the tail model evaluates the force on the line
  // instead of on the solution, off by a relative O(||A_inf^{-1} B||).
  const double rel = 3.0 * (last.A - out.state.at(t_end)).frobenius_norm() *
                     operator_norm(inv(out.state.at(t_end)));
  out.tail_error = rel * (m1_final.frobenius_norm() * t_end + m2_final.frobenius_norm());
  return out;
}

CauchySolution wave_operator(const AsymptoticState& st, double gamma, const SolveConfig& cfg) {
  if (!(det(st.A1) > 0.0))
    throw DetA1NotPositive("wave operator needs det A1 > 0, got " + std::to_string(det(st.A1)));
  return solve_cauchy_at_infinity(st, gamma, cfg);
}

ScatterResult scattering_map(const AsymptoticState& incoming, double gamma,
                             const ScatteringConfig& cfg) {
  if (!(gamma > 4.0 / 3.0 && gamma < 2.0))
    throw DomainError("scattering operator is defined for 4/3 < gamma < 2");
  const CauchySolution reversed = wave_operator(incoming, gamma, cfg.solve);

  // The reversed flow solves the same system; flipping the velocity turns the
  // past asymptote into a forward problem for the physical solution.
  ScatterResult out;
  out.data = PhaseState::compressible(reversed.initial_state.A,
                                      reversed.initial_state.A_dot * -1.0, gamma);

  IntegratorConfig fwd;
  fwd.step = cfg.forward_step;
  fwd.t_start = 0.0;
  fwd.t_end = cfg.forward_t_end;
  fwd.scheme = Scheme::verlet;
  fwd.sample_stride = std::max(
      1, static_cast<int>(std::llround(cfg.forward_t_end / cfg.forward_step)) / cfg.forward_samples);
  const Trajectory traj = integrate(out.data, fwd);
  out.extraction = extract_asymptote(traj, gamma, cfg.tail);
  out.outgoing = out.extraction.state;
  return out;
}

DecayFit decay_check(const Trajectory& traj, const AsymptoticState& st, double gamma) {
  const DegreeData dd = degree_exponents(st, gamma);
  if (!(dd.mu > 0.0) && !weighted_branch(dd))
    throw PreconditionMu("decay margin mu = " + std::to_string(dd.mu) + " is not positive");
  if (traj.samples.size() < 4) throw TooFewSamples("trajectory has too few samples");
  const double t_end = traj.t_final();

  DecayFit fit;
  fit.window_lo = t_end / 10.0;
  fit.window_hi = t_end;

  std::vector<double> ts, ds;
  double peak = 0.0;
  for (const Sample& s : traj.samples) {
    if (s.t < fit.window_lo || s.t <= 0.0) continue;
    ts.push_back(s.t);
    ds.push_back((s.A - st.at(s.t)).frobenius_norm());
    peak = std::max(peak, ds.back());
  }
  if (ts.size() < 4) throw TooFewSamples("too few samples in the decay window");

  if (peak <= 1e-12 * (1.0 + st.at(t_end).frobenius_norm())) {
    fit.floored = true;
    fit.exponent = -(dd.mu + 2.0);
    return fit;
  }
  const LineFit lf = fit_loglog(ts, ds);
  fit.exponent = lf.slope;
  fit.amplitude = std::exp(lf.intercept);
  if (fit.exponent >= 0.0)
    throw InsufficientDecay("trajectory does not approach the prescribed asymptote");
  return fit;
}

}  // namespace affine
