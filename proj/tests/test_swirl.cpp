#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "affine/diagnostics.hpp"
#include "affine/fields.hpp"
#include "affine/fit.hpp"
#include "affine/geometry.hpp"
#include "affine/swirl.hpp"
#include "doctest.h"

using namespace affine;

namespace {

SwirlTrajectory run(double alpha_dot0, double beta_dot0, double t_end, double step = 1e-4,
                    int stride = 100) {
  SwirlIntegratorConfig cfg;
  cfg.step = step;
  cfg.t_end = t_end;
  cfg.sample_stride = stride;
  return integrate_swirl(SwirlState{1.0, alpha_dot0, 0.0, beta_dot0}, cfg);
}

}  // namespace

TEST_CASE("swirl acceleration on explicit states") {
  CHECK(swirl_rhs(SwirlState{1.0, 0.0, 0.0, 1.0}) == doctest::Approx(1.0 / 3.0));
  CHECK(swirl_rhs(SwirlState{1.0, 1.0, 0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(swirl_rhs(SwirlState{2.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)swirl_rhs(SwirlState{-1.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("swirl energy and its minimum-alpha consequence") {
  CHECK(swirl_energy(SwirlState{1.0, 1.0, 0.0, 0.0}) == doctest::Approx(3.0));
  CHECK(swirl_energy(SwirlState{1.0, 0.0, 0.0, 2.0}) == doctest::Approx(4.0));
  CHECK(swirl_energy(SwirlState{1.0, 1.0, 0.0, 1.0}) == doctest::Approx(4.0));

  // Starting at alpha' = 0 the state sits at its minimum alpha = |b0|/sqrt(e0).
  const SwirlTrajectory traj = run(0.0, 2.0, 5.0);
  double min_alpha = 1e300;
  for (const SwirlSample& s : traj.samples) min_alpha = std::min(min_alpha, s.alpha);
  CHECK(min_alpha == doctest::Approx(2.0 / 2.0));
}

TEST_CASE("level curve traversal with monotone alpha'") {
  // The energy level set for rate parameters (alpha', beta') = (1/2, 1/2),
  // traversed in the direction of increasing alpha'.
  const double a0 = 0.5, b0 = 0.5;
  const SwirlTrajectory traj = run(-a0, b0, 25.0, 1e-4, 50);
  CHECK(traj.e0 == doctest::Approx(3 * a0 * a0 + b0 * b0));
  CHECK(traj.max_energy_drift < 1e-8);

  double min_alpha = 1e300;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].alpha_dot < traj.samples[i + 1].alpha_dot);
    min_alpha = std::min(min_alpha, traj.samples[i].alpha);
  }
  CHECK(min_alpha == doctest::Approx(b0 / std::sqrt(traj.e0)).epsilon(1e-4));

  // The exact first integral alpha^2 beta' is reproduced by the samples.
  for (const SwirlSample& s : traj.samples) {
    CHECK(std::abs(s.alpha * s.alpha * s.beta_dot - b0) < 1e-8);
  }
}

TEST_CASE("zero-energy data stays at the equilibrium") {
  const SwirlTrajectory traj = run(0.0, 0.0, 5.0);
  CHECK(traj.e0 == 0.0);
  for (const SwirlSample& s : traj.samples) {
    CHECK(s.alpha == 1.0);
    CHECK(s.alpha_dot == 0.0);
    CHECK(s.beta == 0.0);
  }
}

TEST_CASE("swirl embedding") {
  const PhaseState id = embed(SwirlState{1.0, 0.0, 0.0, 0.0});
  CHECK((id.A - Mat3::identity()).frobenius_norm() < 1e-15);

  const PhaseState quarter = embed(SwirlState{2.0, 0.0, M_PI / 2.0, 0.0});
  CHECK(quarter.A(0, 1) == doctest::Approx(2.0));
  CHECK(quarter.A(1, 0) == doctest::Approx(-2.0));
  CHECK(quarter.A(2, 2) == doctest::Approx(0.25));
  CHECK(std::abs(quarter.A(0, 0)) < 1e-15);
  CHECK(det(quarter.A) == doctest::Approx(1.0));

  // Embedded derivative matches the block form of A'.
  const PhaseState s = embed(SwirlState{1.3, 0.4, 0.7, 0.9});
  CHECK(std::abs((s.A_dot * inv(s.A)).trace()) < 1e-14);
  CHECK(det(s.A) == doctest::Approx(1.0));
}

TEST_CASE("swirl curvature signs and the cross-module match") {
  CHECK(swirl_curvature(SwirlState{1.2, 0.5, 0.0, 0.0}) > 0.0);
  CHECK(swirl_curvature(SwirlState{1.0, 0.0, 0.0, 0.7}) < 0.0);

  for (const SwirlState s :
       {SwirlState{1.0, 1.0, 0.0, 2.0}, SwirlState{0.8, -0.3, 0.4, 0.6}, SwirlState{2.5, 0.1, 1.0, 0.2}}) {
    const PhaseState full = embed(s);
    CHECK(swirl_curvature(s) == doctest::Approx(curvature(full.A, full.A_dot)).epsilon(1e-10));
  }
  CHECK_THROWS_AS((void)swirl_curvature(SwirlState{1.0, 0.0, 0.0, 0.0}), ZeroEnergy);
}

TEST_CASE("negative curvature window") {
  // Generic rotational data: a bounded window containing the alpha' = 0 time.
  const SwirlTrajectory traj = run(-0.5, 0.5, 20.0, 1e-4, 100);
  SwirlIntegratorConfig back;
  back.step = 1e-4;
  back.t_end = -20.0;
  back.sample_stride = 100;
  // Build a two-sided trajectory by integrating backward and splicing.
  const SwirlTrajectory rear = integrate_swirl(SwirlState{1.0, -0.5, 0.0, 0.5}, back);
  SwirlTrajectory both = rear;
  std::reverse(both.samples.begin(), both.samples.end());
  both.samples.insert(both.samples.end(), traj.samples.begin() + 1, traj.samples.end());

  const auto window = negative_curvature_window(both);
  REQUIRE(window.has_value());
  CHECK(window->first < window->second);
  // kappa is negative inside and positive outside.
  for (const SwirlSample& s : both.samples) {
    if (s.t > window->first + 1e-3 && s.t < window->second - 1e-3) CHECK(s.kappa < 0.0);
    if (s.t < window->first - 1e-3 || s.t > window->second + 1e-3) CHECK(s.kappa > 0.0);
  }

  // Symmetric data: the window is symmetric about the turning time t = 0.
  const SwirlTrajectory fwd_sym = run(0.0, 0.5, 20.0, 1e-4, 100);
  SwirlIntegratorConfig bsym = back;
  const SwirlTrajectory rear_sym = integrate_swirl(SwirlState{1.0, 0.0, 0.0, 0.5}, bsym);
  SwirlTrajectory sym = rear_sym;
  std::reverse(sym.samples.begin(), sym.samples.end());
  sym.samples.insert(sym.samples.end(), fwd_sym.samples.begin() + 1, fwd_sym.samples.end());
  const auto wsym = negative_curvature_window(sym);
  REQUIRE(wsym.has_value());
  CHECK(wsym->first == doctest::Approx(-wsym->second).epsilon(1e-6));

  // Irrotational data never loses positivity.
  const SwirlTrajectory irrot = run(0.4, 0.0, 10.0);
  CHECK(!negative_curvature_window(irrot).has_value());

  // A window not covered by the trajectory cannot be located.
  const SwirlTrajectory late_only = [&] {
    SwirlIntegratorConfig cfg;
    cfg.step = 1e-4;
    cfg.t_start = 10.0;
    cfg.t_end = 20.0;
    cfg.sample_stride = 100;
    return integrate_swirl(SwirlState{15.0, 1.0, 0.0, 0.5}, cfg);
  }();
  CHECK_THROWS_AS((void)negative_curvature_window(late_only), WindowNotBracketed);
}

TEST_CASE("rotational asymptote: line slope, pancake limit, decay rate") {
  const double a0 = 0.5, b0 = 0.5;  // e0 = 1
  const SwirlTrajectory traj = run(a0, b0, 1000.0, 1e-3, 10);
  const SwirlAsymptote asym = swirl_asymptote(traj);
  CHECK(asym.slope == doctest::Approx(1.0));

  // || A(t) - A_inf(t) || decays like t^{-2}.
  std::vector<double> ts, ds;
  for (const SwirlSample& s : traj.samples) {
    if (s.t < traj.t_final() / 10.0) continue;
    const PhaseState full = embed(SwirlState{s.alpha, s.alpha_dot, s.beta, b0});
    const Mat3 line = asym.A0 + asym.A1 * s.t;
    ts.push_back(s.t);
    ds.push_back((full.A - line).frobenius_norm());
  }
  const LineFit fit = fit_loglog(ts, ds);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(0.1));

  // The rescaled domain closes in on a circular pancake of radius sqrt(e0).
  const AsymptoticShape shape = classify_asymptotic(asym.A1);
  CHECK(shape.label == ShapeLabel::pancake);
  CHECK(shape.semi_axes[0] == doctest::Approx(1.0));
  CHECK(shape.semi_axes[1] == doctest::Approx(1.0));

  const SwirlSample& last = traj.samples.back();
  const Ellipsoid rescaled =
      rescaled_domain(embed(SwirlState{last.alpha, last.alpha_dot, last.beta, b0}).A, last.t);
  CHECK(std::abs(rescaled.semi_axes[0] - 1.0) < 1e-3);
  CHECK(std::abs(rescaled.semi_axes[1] - 1.0) < 1e-3);
  CHECK(rescaled.semi_axes[2] < 1e-5);
}

TEST_CASE("irrotational branch asymptotics") {
  // Backward: alpha' approaches -sqrt(e0) like |t|^{-6}.
  const double a0 = -1.0 / std::sqrt(3.0);  // e0 = 1
  SwirlIntegratorConfig back;
  back.step = 1e-4;
  back.t_end = -20.0;
  back.sample_stride = 100;
  const SwirlTrajectory rear = integrate_swirl(SwirlState{1.0, a0, 0.0, 0.0}, back);
  std::vector<double> ts, vs;
  const double e0 = rear.e0;
  for (const SwirlSample& s : rear.samples) {
    if (s.t > -4.0) continue;
    ts.push_back(-s.t);
    vs.push_back(std::sqrt(e0) + s.alpha_dot);
    CHECK(vs.back() > 0.0);
  }
  const LineFit fit = fit_loglog(ts, vs);
  CHECK(fit.slope == doctest::Approx(-6.0).epsilon(0.085));

  // Forward: the collapse variable grows at rate sqrt(2 e0).
  const SwirlTrajectory fwd = run(a0, 0.0, 100.0, 1e-4, 100);
  CHECK(fwd.used_collapse_variable);
  const SwirlSample& last = fwd.samples.back();
  const double q_rate_end = -2.0 * last.alpha_dot / std::pow(last.alpha, 3.0);
  CHECK(std::abs(q_rate_end - std::sqrt(2.0 * e0)) < 1e-3);
  for (const SwirlSample& s : fwd.samples) {
    if (s.energy > 0.0 && (s.alpha_dot != 0.0 || s.t == 0.0)) CHECK(s.kappa >= 0.0);
  }

  const SwirlAsymptote asym = swirl_asymptote(fwd);
  CHECK(asym.irrotational);
  CHECK(asym.q_slope == doctest::Approx(std::sqrt(2.0)));
  const AsymptoticShape shape = classify_asymptotic(asym.A1);
  CHECK(shape.label == ShapeLabel::sausage);
  CHECK(shape.semi_axes[0] == doctest::Approx(std::sqrt(2.0)));

  // Forward curvature decays at least as fast as the proof's bound suggests.
  std::vector<double> kt, kv;
  for (const SwirlSample& s : fwd.samples) {
    if (s.t < 10.0 || s.kappa <= 0.0) continue;
    kt.push_back(s.t);
    kv.push_back(s.kappa);
  }
  const LineFit kfit = fit_loglog(kt, kv);
  CHECK(kfit.slope <= -2.3);
}

TEST_CASE("shear flow") {
  const Mat3 m = Mat3::outer(Vec3{0, 1, 0}, Vec3{1, 0, 0});
  const ShearFlow flow = shear_solution(m, Mat3::identity());
  for (double t : {0.0, 1.0, 5.0, 40.0}) {
    const PhaseState s = flow.at(t);
    CHECK(std::abs(det(s.A) - 1.0) < 1e-12);
    CHECK(incomp_rhs(s.A, s.A_dot).frobenius_norm() < 1e-12);
    const double p = sample_incompressible_pressure(s, s.A * Vec3{0.3, 0.2, 0.1});
    CHECK(std::abs(p) < 1e-13);
  }
  const AsymptoticShape line_shape = classify_asymptotic(m * Mat3::identity());
  CHECK(line_shape.label == ShapeLabel::sausage);

  const Mat3 m2 = m + Mat3::outer(Vec3{0, 0, 1}, Vec3{0, 1, 0});
  const ShearFlow flow2 = shear_solution(m2, Mat3::identity());
  CHECK(std::abs(det(flow2.at(7.0).A) - 1.0) < 1e-12);
  const AsymptoticShape disk_shape = classify_asymptotic(m2);
  CHECK(disk_shape.label == ShapeLabel::pancake);

  // The zero direction is legal here: a constant trajectory.
  const ShearFlow still = shear_solution(Mat3::zero(), Mat3::identity());
  CHECK((still.at(3.0).A - Mat3::identity()).frobenius_norm() < 1e-15);

  CHECK_THROWS_AS((void)shear_solution(Mat3::identity(), Mat3::identity()), NotNilpotent);
  CHECK_THROWS_AS((void)shear_solution(m, Mat3::identity() * 2.0), NotUnimodular);
}
