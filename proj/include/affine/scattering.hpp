#pragma once

#include <array>
#include <vector>

#include "affine/dynamics.hpp"
#include "affine/mat3.hpp"

namespace affine {

/// Matrix line A0 + t A1 that a solution may approach as t grows.
struct AsymptoticState {
  Mat3 A0;
  Mat3 A1;

  Mat3 at(double t) const { return A0 + A1 * t; }
};

/// Degree data of an asymptotic state: d is the degree of det(A0 + t A1),
/// b the degree of its cofactor polynomial, a = b - d the growth exponent of
/// the inverse, and mu = d(gamma - 1) - a - 2 the decay margin.
struct DegreeData {
  int d = 0;
  int b = 0;
  int a = 0;
  double mu = 0.0;
};

/// The a = d = 1 family converges in a time-weighted norm and needs gamma > 5.
inline bool weighted_branch(const DegreeData& dd) { return dd.a == 1 && dd.d == 1; }

/// Exact coefficients (beta_0..beta_3) of det(A0 + t A1); beta_3 = det A1.
std::array<double, 4> det_polynomial(const AsymptoticState& st);

/// Classify a state whose determinant diverges to +infinity; throws
/// DetNotDiverging otherwise.
DegreeData degree_exponents(const AsymptoticState& st, double gamma);

struct SolveConfig {
  double T0 = 10.0;          // first matching time; doubled on weak contraction
  int max_doublings = 3;
  int grid_nodes = 512;      // geometric grid on [T, t_max_factor * T]
  double t_max_factor = 100.0;
  double fp_tol = 1e-13;     // sup-norm node update at convergence
  int max_iterations = 80;
  double back_step = 1e-3;   // cap for the backward integration step
};

/// Correction grid of one solve: node values of B(t) = A(t) - A_inf(t).
struct FixedPointGrid {
  double T = 0.0;
  double T_max = 0.0;
  std::vector<double> nodes;
  std::vector<Mat3> B;
  bool weighted = false;
};

struct CauchySolution {
  PhaseState initial_state;     // (A(0), A'(0)) reproducing the prescribed asymptote
  DegreeData degree;
  double contraction_factor = 0.0;  // last sup-norm update ratio
  int iterations = 0;
  FixedPointGrid grid;
  double sup_B = 0.0;           // sup over nodes of ||B|| (weighted norm on that branch)
  double ball_radius = 0.0;     // admissible ball radius implied by ||A_inf^{-1}||
  double tail_error = 0.0;      // budget for the correction dropped beyond T_max
  std::vector<double> T_sequence;
};

/// Construct the solution with prescribed asymptote by iterating
/// B -> integral of (sigma - t) N(A_inf + B) on a geometric grid, then
/// integrating backward from the matching time to t = 0.
/// Requires mu > 0, or gamma > 5 on the weighted branch.
CauchySolution solve_cauchy_at_infinity(const AsymptoticState& st, double gamma,
                                        const SolveConfig& cfg = {});

struct TailConfig {
  double decade = 10.0;   // fitting window is [t_end / decade, t_end]
  int min_samples = 16;
};

struct ExtractedAsymptote {
  AsymptoticState state;
  double n_decay_exponent = 0.0;  // fitted slope of log ||N(A(t))|| vs log t
  double tail_error = 0.0;
  int iterations = 0;
};

/// Recover (A0, A1) from a computed trajectory via the endpoint identities
/// A1 = A'(t) + int_t^inf N and A0 = A(t) - t A'(t) - int_t^inf sigma N,
/// iterating the tail integrals against the current asymptote estimate.
/// Requires the fitted force decay to be faster than t^{-2}.
ExtractedAsymptote extract_asymptote(const Trajectory& traj, double gamma,
                                     const TailConfig& cfg = {});

/// Map an asymptotic state with det A1 > 0 to the initial data of the unique
/// solution approaching it (gamma > 4/3 via the mu > 0 precondition).
CauchySolution wave_operator(const AsymptoticState& st, double gamma, const SolveConfig& cfg = {});

struct ScatteringConfig {
  SolveConfig solve;
  TailConfig tail;
  double forward_t_end = 300.0;
  double forward_step = 1e-3;
  int forward_samples = 4096;
};

struct ScatterResult {
  AsymptoticState outgoing;
  PhaseState data;              // time-symmetric data (A(0), A'(0)) of the physical solution
  ExtractedAsymptote extraction;
};

/// Scattering map: realize the past asymptote by time reversal, flip the
/// velocity, integrate forward, and extract the future asymptote.
/// Defined for 4/3 < gamma < 2 and det A1 > 0.
ScatterResult scattering_map(const AsymptoticState& incoming, double gamma,
                             const ScatteringConfig& cfg = {});

struct DecayFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  bool floored = false;  // differences sit at the numerical floor; exponent is
                         // the sentinel -(mu + 2)
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Log-log fit of ||A(t) - A_inf(t)|| over the last decade of the trajectory.
DecayFit decay_check(const Trajectory& traj, const AsymptoticState& st, double gamma);

}  // namespace affine
