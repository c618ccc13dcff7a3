// Command-line front end: simulations and analyses driven by a JSON config,
// exporting CSV time series and JSON reports for offline plotting.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affine/diagnostics.hpp"
#include "affine/dynamics.hpp"
#include "affine/fields.hpp"
#include "affine/geometry.hpp"
#include "affine/io.hpp"
#include "affine/scattering.hpp"
#include "affine/swirl.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace affine;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t seed = 0;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

double num_field(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double require_num(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

Mat3 mat_field(const json& j, const std::string& key, const Mat3& fallback) {
  if (!j.contains(key)) return fallback;
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 9)
    throw ConfigError("field '" + key + "' must be a row-major array of 9 numbers");
  Mat3 m;
  for (int i = 0; i < 9; ++i) {
    if (!arr[static_cast<std::size_t>(i)].is_number())
      throw ConfigError("field '" + key + "' must contain numbers only");
    m.m[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(i)].get<double>();
  }
  if (!m.finite()) throw ConfigError("field '" + key + "' contains non-finite entries");
  return m;
}

json mat_to_json(const Mat3& m) {
  json arr = json::array();
  for (double v : m.m) arr.push_back(v);
  return arr;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

DensityProfile profile_from_config(const json& j) {
  if (!j.contains("profile")) throw ConfigError("missing 'profile' section");
  const json& p = j.at("profile");
  if (p.contains("isentropic")) {
    return isentropic_profile(require_num(p.at("isentropic"), "gamma"));
  }
  if (p.contains("builtin")) {
    const std::string name = p.at("builtin").get<std::string>();
    // Named non-closed-form profile exercised through the quadrature path.
    if (name == "parabolic") {
      const double gamma = require_num(p, "gamma");
      return profile_from_rho0([](double s) { return 1.0 - s * s; }, 1.0, gamma);
    }
    throw ConfigError("unknown builtin profile '" + name + "'");
  }
  throw ConfigError("profile must be {\"isentropic\": {...}} or {\"builtin\": ...}");
}

PhaseState state_from_config(const json& cfg) {
  const std::string regime = cfg.value("regime", std::string("compressible"));
  const Mat3 a = mat_field(cfg, "A", Mat3::identity());
  const Mat3 adot = mat_field(cfg, "A_dot", Mat3::zero());
  if (regime == "compressible") {
    return PhaseState::compressible(a, adot, require_num(cfg, "gamma"));
  }
  if (regime == "incompressible") {
    return PhaseState::incompressible(a, adot);
  }
  throw ConfigError("regime must be 'compressible' or 'incompressible'");
}

IntegratorConfig integrator_from_config(const json& cfg, Regime regime) {
  IntegratorConfig ic;
  ic.step = require_num(cfg, "step");
  ic.t_start = num_field(cfg, "t_start", 0.0);
  ic.t_end = require_num(cfg, "t_end");
  ic.sample_stride = static_cast<int>(num_field(cfg, "sample_stride", 10));
  ic.scheme = regime == Regime::compressible ? Scheme::verlet : Scheme::rk4;
  if (cfg.contains("scheme")) {
    const std::string s = cfg.at("scheme").get<std::string>();
    if (s == "verlet")
      ic.scheme = Scheme::verlet;
    else if (s == "rk4")
      ic.scheme = Scheme::rk4;
    else
      throw ConfigError("scheme must be 'verlet' or 'rk4'");
  }
  if (cfg.contains("projection")) ic.projection = cfg.at("projection").get<bool>();
  return ic;
}

json growth_to_json(const GrowthReport& r) {
  return json{{"diam_slope", r.diam_slope},
              {"det_exponent", r.det_exponent},
              {"window", {r.t_lo, r.t_hi}},
              {"residuals", {{"diam_rms", r.diam_rms}, {"logdet_rms", r.logdet_rms}}}};
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const PhaseState s0 = state_from_config(cfg);
  const IntegratorConfig ic = integrator_from_config(cfg, s0.regime);
  const Trajectory traj = integrate(s0, ic);

  write_trajectory_csv((fs::path(args.out_dir) / "trajectory.csv").string(), traj);

  json summary;
  summary["regime"] = s0.regime == Regime::compressible ? "compressible" : "incompressible";
  if (s0.regime == Regime::compressible) summary["gamma"] = s0.gamma;
  summary["samples"] = traj.samples.size();
  summary["t_final"] = traj.t_final();
  summary["max_energy_drift"] = traj.max_energy_drift;
  summary["min_det"] = traj.min_det;
  if (s0.regime == Regime::incompressible) {
    summary["max_det_deviation"] = traj.max_det_deviation;
    summary["max_trace_L"] = traj.max_trace_L;
    summary["max_projection_shift"] = traj.max_projection_shift;
  }

  const double w_lo = num_field(cfg, "growth_window_lo", std::abs(ic.t_end) / 4.0);
  const double w_hi = num_field(cfg, "growth_window_hi", std::abs(ic.t_end));
  if (w_lo >= 1.0 && w_hi > 2.0 * w_lo && traj.t_final() >= w_hi) {
    summary["growth"] = growth_to_json(growth_fit(traj, w_lo, w_hi));
  } else {
    summary["growth"] = nullptr;
  }
  write_json(fs::path(args.out_dir) / "summary.json", summary);
  return 0;
}

// ---------------------------------------------------------------------------
// swirl

SwirlTrajectory splice_two_sided(const SwirlState& s0, double t_min, double t_max, double step,
                                 int stride) {
  SwirlIntegratorConfig cfg;
  cfg.step = step;
  cfg.sample_stride = stride;
  SwirlTrajectory combined;
  if (t_min < 0.0) {
    cfg.t_end = t_min;
    combined = integrate_swirl(s0, cfg);
    std::reverse(combined.samples.begin(), combined.samples.end());
  }
  if (t_max > 0.0) {
    cfg.t_end = t_max;
    const SwirlTrajectory fwd = integrate_swirl(s0, cfg);
    if (combined.samples.empty()) {
      combined = fwd;
    } else {
      combined.samples.insert(combined.samples.end(), fwd.samples.begin() + 1, fwd.samples.end());
      combined.max_energy_drift = std::max(combined.max_energy_drift, fwd.max_energy_drift);
      combined.used_collapse_variable |= fwd.used_collapse_variable;
    }
  }
  if (combined.samples.empty()) throw ConfigError("empty swirl time range");
  return combined;
}

int cmd_swirl(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  SwirlState s0;
  s0.alpha = num_field(cfg, "alpha0", 1.0);
  s0.alpha_dot = require_num(cfg, "alpha_dot0");
  s0.beta_dot0 = num_field(cfg, "beta_dot0", 0.0);
  const double t_min = num_field(cfg, "t_min", 0.0);
  const double t_max = require_num(cfg, "t_max");
  const double step = num_field(cfg, "step", 1e-4);
  const int stride = static_cast<int>(num_field(cfg, "sample_stride", 100));
  const int phase_grid = static_cast<int>(num_field(cfg, "phase_grid", 512));

  const SwirlTrajectory traj = splice_two_sided(s0, t_min, t_max, step, stride);

  {
    std::ofstream out(fs::path(args.out_dir) / "swirl.csv");
    if (!out) throw Error("cannot open swirl.csv for writing");
    out << "t,alpha,alpha_dot,beta,beta_dot,energy,kappa\n";
    for (const SwirlSample& s : traj.samples) {
      out << fmt17(s.t) << ',' << fmt17(s.alpha) << ',' << fmt17(s.alpha_dot) << ','
          << fmt17(s.beta) << ',' << fmt17(s.beta_dot) << ',' << fmt17(s.energy) << ','
          << fmt17(s.kappa) << '\n';
    }
  }

  // Phase-plane export: the energy level set and the curvature sign boundary.
  {
    const double e0 = traj.e0;
    double alpha_hi = 0.0, alpha_lo = 1e300;
    for (const SwirlSample& s : traj.samples) {
      alpha_hi = std::max(alpha_hi, s.alpha);
      alpha_lo = std::min(alpha_lo, s.alpha);
    }
    std::ofstream out(fs::path(args.out_dir) / "level_curve.csv");
    if (!out) throw Error("cannot open level_curve.csv for writing");
    out << "alpha,alpha_dot_plus,alpha_dot_minus,kappa_boundary_plus,kappa_boundary_minus\n";
    for (int k = 0; k < phase_grid; ++k) {
      const double alpha =
          alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(k) / (phase_grid - 1);
      const double num = e0 - s0.beta_dot0 * s0.beta_dot0 / (alpha * alpha);
      const double a6 = std::pow(alpha, 6.0);
      const double psi = num > 0.0 ? std::sqrt(num / (1.0 + 2.0 / a6)) : 0.0;
      const double boundary = std::abs(s0.beta_dot0) / (std::sqrt(3.0) * alpha);
      out << fmt17(alpha) << ',' << fmt17(psi) << ',' << fmt17(-psi) << ',' << fmt17(boundary)
          << ',' << fmt17(-boundary) << '\n';
    }
  }

  json summary;
  summary["e0"] = traj.e0;
  summary["beta_dot0"] = s0.beta_dot0;
  summary["max_energy_drift"] = traj.max_energy_drift;
  summary["used_collapse_variable"] = traj.used_collapse_variable;
  try {
    const auto window = negative_curvature_window(traj);
    if (window) {
      summary["negative_curvature_window"] = {window->first, window->second};
    } else {
      summary["negative_curvature_window"] = nullptr;
    }
  } catch (const WindowNotBracketed&) {
    summary["negative_curvature_window"] = "not-bracketed";
  }
  try {
    const SwirlAsymptote asym = swirl_asymptote(traj);
    json a;
    a["irrotational"] = asym.irrotational;
    a["slope"] = asym.slope;
    a["offset"] = asym.offset;
    a["beta_bar"] = asym.beta_bar;
    a["A0"] = mat_to_json(asym.A0);
    a["A1"] = mat_to_json(asym.A1);
    if (asym.irrotational) {
      a["q_slope"] = asym.q_slope;
      a["q_offset"] = asym.q_offset;
    }
    summary["asymptote"] = a;
  } catch (const Error& e) {
    summary["asymptote"] = nullptr;
    summary["asymptote_note"] = e.what();
  }
  write_json(fs::path(args.out_dir) / "swirl_summary.json", summary);
  return 0;
}

// ---------------------------------------------------------------------------
// scatter

int cmd_scatter(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const double gamma = require_num(cfg, "gamma");
  AsymptoticState st;
  st.A0 = mat_field(cfg, "A0", Mat3::zero());
  st.A1 = mat_field(cfg, "A1", Mat3::identity());

  SolveConfig sc;
  if (cfg.contains("solver")) {
    const json& s = cfg.at("solver");
    sc.T0 = num_field(s, "T0", sc.T0);
    sc.max_doublings = static_cast<int>(num_field(s, "max_doublings", sc.max_doublings));
    sc.grid_nodes = static_cast<int>(num_field(s, "grid_nodes", sc.grid_nodes));
    sc.t_max_factor = num_field(s, "t_max_factor", sc.t_max_factor);
  }

  const DegreeData dd = degree_exponents(st, gamma);
  json out;
  out["degree"] = {{"d", dd.d},
                   {"b", dd.b},
                   {"a", dd.a},
                   {"mu", dd.mu},
                   {"weighted", weighted_branch(dd)}};

  const CauchySolution sol = solve_cauchy_at_infinity(st, gamma, sc);
  out["initial_data"] = {{"A", mat_to_json(sol.initial_state.A)},
                         {"A_dot", mat_to_json(sol.initial_state.A_dot)}};
  out["solver"] = {{"T", sol.grid.T},
                   {"T_max", sol.grid.T_max},
                   {"T_sequence", sol.T_sequence},
                   {"contraction_factor", sol.contraction_factor},
                   {"iterations", sol.iterations},
                   {"sup_B", sol.sup_B},
                   {"ball_radius", sol.ball_radius},
                   {"tail_error", sol.tail_error},
                   {"weighted", sol.grid.weighted}};

  const double t_end = num_field(cfg, "forward_t_end", 300.0);
  if (t_end > 0.0) {
    IntegratorConfig ic;
    ic.step = num_field(cfg, "forward_step", 1e-3);
    ic.t_end = t_end;
    ic.sample_stride = std::max(1, static_cast<int>(std::llround(t_end / ic.step)) / 4096);
    const Trajectory traj = integrate(sol.initial_state, ic);
    const DecayFit fit = decay_check(traj, st, gamma);
    out["decay_fit"] = {{"exponent", fit.exponent},
                        {"amplitude", fit.amplitude},
                        {"floored", fit.floored},
                        {"window", {fit.window_lo, fit.window_hi}}};
  }
  write_json(fs::path(args.out_dir) / "scatter.json", out);
  return 0;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const Mat3 a1 = mat_field(cfg, "A1", Mat3::identity());
  const double tol = num_field(cfg, "tol", 1e-8);
  const AsymptoticShape shape = classify_asymptotic(a1, tol);
  json out;
  out["rank"] = shape.rank;
  out["label"] = to_string(shape.label);
  out["semi_axes"] = {shape.semi_axes[0], shape.semi_axes[1], shape.semi_axes[2]};
  write_json(fs::path(args.out_dir) / "classify.json", out);
  return 0;
}

// ---------------------------------------------------------------------------
// fields-sample

int cmd_fields_sample(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const PhaseState s0 = state_from_config(cfg);
  const int count = static_cast<int>(num_field(cfg, "count", 100));
  if (count < 1) throw ConfigError("count must be positive");

  DensityProfile profile = isentropic_profile(2.0);
  if (s0.regime == Regime::compressible) profile = profile_from_config(cfg);

  // Either a single state or every recorded sample of a run.
  std::vector<Sample> states;
  if (cfg.contains("t_end")) {
    const IntegratorConfig ic = integrator_from_config(cfg, s0.regime);
    const Trajectory traj = integrate(s0, ic);
    states = traj.samples;
  } else {
    Sample s;
    s.t = 0.0;
    s.A = s0.A;
    s.A_dot = s0.A_dot;
    states.push_back(s);
  }

  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);

  std::ofstream out(fs::path(args.out_dir) / "fields.csv");
  if (!out) throw Error("cannot open fields.csv for writing");
  out << "t,x1,x2,x3,u1,u2,u3,rho,eps,p\n";
  for (int k = 0; k < count; ++k) {
    const Sample& s = states[pick(rng)];
    Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
    dir = dir * (1.0 / dir.norm());
    const double radius = std::cbrt(unit(rng));
    const Vec3 x = s.A * (dir * radius);
    const PhaseState st{s.A, s.A_dot, s0.regime, s0.gamma};
    double rho = 0.0, eps = 0.0, pres = 0.0;
    Vec3 u;
    if (s0.regime == Regime::compressible) {
      const FluidSample f = sample_compressible(st, profile, x);
      u = f.u;
      rho = f.rho;
      eps = f.eps;
      pres = f.p;
    } else {
      u = s.A_dot * (inv(s.A) * x);
      pres = sample_incompressible_pressure(st, x);
    }
    out << fmt17(s.t) << ',' << fmt17(x[0]) << ',' << fmt17(x[1]) << ',' << fmt17(x[2]) << ','
        << fmt17(u[0]) << ',' << fmt17(u[1]) << ',' << fmt17(u[2]) << ',' << fmt17(rho) << ','
        << fmt17(eps) << ',' << fmt17(pres) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepCell {
  int index = 0;
  std::string mode;
  double gamma = 0.0;
  std::string family;
};

AsymptoticState family_state(const std::string& name) {
  if (name == "rank3") return {Mat3::identity(), Mat3::identity()};
  if (name == "rank2") return {Mat3::diag(0, 0, 1), Mat3::diag(1, 1, 0)};
  if (name == "rank1-a0") return {Mat3::diag(0, 1, 1), Mat3::diag(1, 0, 0)};
  if (name == "rank1-a1")
    return {Mat3::from_rows({0, 0, 0, 0, 0, 1, 0, -1, 0}), Mat3::diag(1, 1, 0)};
  throw ConfigError("unknown asymptotic family '" + name + "'");
}

std::string run_sweep_cell(const SweepCell& cell, const json& cfg) {
  std::string row = std::to_string(cell.index) + "," + cell.mode + "," + fmt17(cell.gamma) + "," +
                    (cell.family.empty() ? "-" : cell.family) + ",";
  try {
    if (cell.mode == "spherical") {
      IntegratorConfig ic;
      ic.step = num_field(cfg, "step", 1e-3);
      ic.t_end = num_field(cfg, "t_end", 200.0);
      ic.sample_stride = static_cast<int>(num_field(cfg, "sample_stride", 100));
      const Trajectory traj =
          integrate(PhaseState::compressible(Mat3::identity(), Mat3::zero(), cell.gamma), ic);
      const double w_lo = num_field(cfg, "window_lo", ic.t_end / 4.0);
      const double w_hi = num_field(cfg, "window_hi", ic.t_end);
      const GrowthReport r = growth_fit(traj, w_lo, w_hi);
      row += "ok," + fmt17(traj.max_energy_drift) + "," + fmt17(r.det_exponent) + "," +
             fmt17(r.diam_slope) + ",,,,,";
    } else if (cell.mode == "asymptotic") {
      const AsymptoticState st = family_state(cell.family);
      const DegreeData dd = degree_exponents(st, cell.gamma);
      const std::string tail = std::to_string(dd.d) + "," + std::to_string(dd.a) + "," +
                               fmt17(dd.mu) + "," + (weighted_branch(dd) ? "1" : "0") + ",";
      try {
        const CauchySolution sol = solve_cauchy_at_infinity(st, cell.gamma);
        row += "solved,,,," + tail + fmt17(sol.contraction_factor);
      } catch (const PreconditionMu&) {
        row += "rejected-mu,,,," + tail;
      }
    } else {
      throw ConfigError("unknown sweep mode '" + cell.mode + "'");
    }
  } catch (const Error& e) {
    std::string what = e.what();
    for (char& c : what)
      if (c == ',' || c == '\n') c = ';';
    row += "error:" + what + ",,,,,,,,";
  }
  return row + "\n";
}

int cmd_sweep(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const std::string mode = cfg.value("mode", std::string("spherical"));
  std::vector<double> gammas;
  if (cfg.contains("gammas"))
    for (const auto& g : cfg.at("gammas")) gammas.push_back(g.get<double>());
  std::vector<std::string> families;
  if (mode == "asymptotic") {
    if (cfg.contains("families"))
      for (const auto& f : cfg.at("families")) families.push_back(f.get<std::string>());
  } else {
    families.push_back("");
  }

  std::vector<SweepCell> cells;
  for (double g : gammas)
    for (const std::string& f : families)
      cells.push_back({static_cast<int>(cells.size()), mode, g, f});

  std::vector<std::string> rows(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, args.jobs))
#endif
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    rows[static_cast<std::size_t>(i)] = run_sweep_cell(cells[static_cast<std::size_t>(i)], cfg);
  }

  std::ofstream out(fs::path(args.out_dir) / "sweep.csv");
  if (!out) throw Error("cannot open sweep.csv for writing");
  out << "cell,mode,gamma,family,status,energy_drift,det_exponent,axis_slope,d,a,mu,weighted,"
         "contraction\n";
  for (const std::string& r : rows) out << r;
  return 0;
}

// ---------------------------------------------------------------------------
// convergence-study

int cmd_convergence(const CommonArgs& args) {
  const json cfg = load_config(args.config_path);
  const PhaseState s0 = state_from_config(cfg);
  if (!cfg.contains("steps") || !cfg.at("steps").is_array() || cfg.at("steps").empty())
    throw ConfigError("convergence study needs a nonempty 'steps' array");
  std::vector<double> steps;
  for (const auto& h : cfg.at("steps")) steps.push_back(h.get<double>());
  double h_min = steps.front();
  for (double h : steps) {
    if (!(h > 0.0)) throw ConfigError("steps must be positive");
    h_min = std::min(h_min, h);
  }

  json base = cfg;
  base["sample_stride"] = static_cast<double>(1 << 30);

  auto run_at = [&](double h) {
    json c = base;
    c["step"] = h;
    const IntegratorConfig ic = integrator_from_config(c, s0.regime);
    return integrate(s0, ic);
  };
  const Trajectory ref = run_at(h_min / 4.0);
  const Mat3 a_ref = ref.samples.back().A;
  const Mat3 v_ref = ref.samples.back().A_dot;

  std::ofstream out(fs::path(args.out_dir) / "convergence.csv");
  if (!out) throw Error("cannot open convergence.csv for writing");
  out << "step,error_A,error_Adot,energy_drift,observed_order\n";
  double prev_err = 0.0, prev_h = 0.0;
  for (double h : steps) {
    const Trajectory traj = run_at(h);
    const double err_a = (traj.samples.back().A - a_ref).frobenius_norm();
    const double err_v = (traj.samples.back().A_dot - v_ref).frobenius_norm();
    std::string order;
    if (prev_h > 0.0 && err_a > 0.0 && prev_err > 0.0 && h != prev_h) {
      order = fmt17(std::log(prev_err / err_a) / std::log(prev_h / h));
    }
    out << fmt17(h) << ',' << fmt17(err_a) << ',' << fmt17(err_v) << ','
        << fmt17(traj.max_energy_drift) << ',' << order << '\n';
    prev_err = err_a;
    prev_h = h;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine fluid motion toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string command;
  for (const auto& name : {"simulate", "swirl", "scatter", "classify", "fields-sample", "sweep",
                           "convergence-study"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", args.config_path, "path to the JSON config")->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--jobs", args.jobs, "max concurrent sweep cells");
    sub->add_option("--seed", args.seed, "seed for randomized sampling");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fs::create_directories(args.out_dir);
    if (command == "simulate") return cmd_simulate(args);
    if (command == "swirl") return cmd_swirl(args);
    if (command == "scatter") return cmd_scatter(args);
    if (command == "classify") return cmd_classify(args);
    if (command == "fields-sample") return cmd_fields_sample(args);
    if (command == "sweep") return cmd_sweep(args);
    if (command == "convergence-study") return cmd_convergence(args);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const NoContraction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const StepFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
