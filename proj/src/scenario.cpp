#include "sedflow/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <fmt/os.h>

#include "sedflow/profiles.hpp"
#include "sedflow/spectrum.hpp"

namespace sedflow {

namespace fs = std::filesystem;

ModelParams make_params(const ScenarioConfig& c) {
  const auto& p = c.params;
  if (p.c_t) return ModelParams(p.tan_theta, p.s, p.d, p.c_d, p.c_u, *p.c_t);
  return ModelParams(p.tan_theta, p.s, p.d, p.c_d, p.c_u);
}

Grid make_grid(const ScenarioConfig& c) {
  return Grid(c.grid.nx, c.grid.ny, c.grid.lx, c.grid.ly);
}

SolverOptions make_solver_options(const ScenarioConfig& c) {
  SolverOptions options;
  options.model = c.model.rhs;
  options.cfl = c.model.cfl;
  options.eps_q = c.model.eps_q;
  options.h_min = c.model.h_min;
  options.artificial_diffusion = c.model.artificial_diffusion;
  return options;
}

Field build_ripple_bed(const Grid& grid, double height, double wavelength,
                       double crest_x) {
  if (!(height >= 0.0)) throw std::invalid_argument("build_ripple_bed: height must be >= 0");
  if (!(wavelength > 0.0))
    throw std::invalid_argument("build_ripple_bed: wavelength must be positive");
  const double periods = grid.lx / wavelength;
  if (std::abs(periods - std::round(periods)) > 1e-9 * std::max(1.0, periods))
    throw std::invalid_argument(fmt::format(
        "build_ripple_bed: wavelength {} does not divide Lx = {}", wavelength, grid.lx));
  Field b(grid);
  if (height == 0.0) return b;
  const double k = 2.0 * std::numbers::pi / wavelength;
  for (int i = 0; i < grid.nx; ++i) {
    const double value = 0.5 * height * std::cos(k * (grid.x(i) - crest_x));
    for (int j = 0; j < grid.ny; ++j) b(i, j) = value;
  }
  return b;
}

FlowState build_initial_state(const ScenarioConfig& config, const ModelParams& params) {
  const Grid grid = make_grid(config);
  FlowState state;
  if (config.initial.kind == InitialKind::uniform) {
    const auto& init = config.initial;
    state = FlowState(grid, init.h, init.ubar, init.vbar, init.cbar);
  } else {
    const Equilibrium eq = steady_equilibrium(params);
    state = FlowState(grid, 1.0, eq.U, eq.V, eq.Cbar);
    const double amplitude = config.initial.amplitude;
    if (amplitude != 0.0) {
      const double k = 2.0 * std::numbers::pi / grid.lx;
      for (int i = 0; i < grid.nx; ++i) {
        const double value =
            1.0 + amplitude * std::sin(k * (grid.x(i) - config.initial.phase_shift));
        for (int j = 0; j < grid.ny; ++j) state.h(i, j) = value;
      }
    }
  }
  if (config.bed.kind == BedKind::ripple)
    state.b = build_ripple_bed(grid, config.bed.height, config.bed.wavelength,
                               config.bed.crest_x);
  return state;
}

Field froude(const FlowState& state) {
  Field fr(state.grid);
  for (std::size_t n = 0; n < fr.size(); ++n) {
    if (!(state.h[n] > 0.0)) throw std::domain_error("froude: depth must be positive");
    fr[n] = std::hypot(state.ubar[n], state.vbar[n]) / std::sqrt(gravity * state.h[n]);
  }
  return fr;
}

double sample_at_x(const Field& f, const Grid& grid, double x) {
  const double pos = x / grid.dx();
  const double cell = std::floor(pos);
  const double w = pos - cell;
  const int i0 = grid.wrap_x(static_cast<int>(cell));
  const int i1 = grid.wrap_x(i0 + 1);
  return (1.0 - w) * f(i0, 0) + w * f(i1, 0);
}

namespace {

std::string number_tag(double v) { return fmt::format("{:g}", v); }

std::string g17(double v) { return fmt::format("{:.17g}", v); }

void write_snapshot(const fs::path& dir, const FlowState& s) {
  const Field fr = froude(s);
  auto out = fmt::output_file((dir / fmt::format("snapshot_t{}.csv", number_tag(s.t))).string());
  out.print("x,y,b,h,ubar,vbar,cbar,froude\n");
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i)
      out.print("{},{},{},{},{},{},{},{}\n", g17(s.grid.x(i)), g17(s.grid.y(j)),
                g17(s.b(i, j)), g17(s.h(i, j)), g17(s.ubar(i, j)), g17(s.vbar(i, j)),
                g17(s.cbar(i, j)), g17(fr(i, j)));
}

void write_probe(const fs::path& dir, const ProbeSeries& p) {
  auto out = fmt::output_file(
      (dir / fmt::format("probe_x{}.csv", number_tag(p.x_location))).string());
  out.print("t,h,ubar,cbar\n");
  for (std::size_t k = 0; k < p.times.size(); ++k)
    out.print("{},{},{},{}\n", g17(p.times[k]), g17(p.h[k]), g17(p.ubar[k]),
              g17(p.cbar[k]));
}

// Vertical structure at the node nearest to x, gradients from the solver's
// central differences.
void write_profiles(const fs::path& dir, const FlowState& s, const ModelParams& params,
                    double x, int samples, double eps_q) {
  const int i = s.grid.wrap_x(static_cast<int>(std::lround(x / s.grid.dx())));
  const int j = 0;
  ProfileInputs in;
  in.h = s.h(i, j);
  in.ubar = s.ubar(i, j);
  in.vbar = s.vbar(i, j);
  in.cbar = s.cbar(i, j);
  in.q = std::sqrt(in.ubar * in.ubar + in.vbar * in.vbar + eps_q * eps_q);
  in.dc_dx = ddx(s.cbar, s.grid)(i, j);
  in.dc_dy = ddy(s.cbar, s.grid)(i, j);
  in.du_dx = ddx(s.ubar, s.grid)(i, j);
  in.du_dy = ddy(s.ubar, s.grid)(i, j);
  in.dv_dy = ddy(s.vbar, s.grid)(i, j);
  in.dh_dx = ddx(s.h, s.grid)(i, j);
  in.dh_dy = ddy(s.h, s.grid)(i, j);
  in.db_dx = ddx(s.b, s.grid)(i, j);
  in.db_dy = ddy(s.b, s.grid)(i, j);
  const VerticalProfile u = sample_profile(ProfileOp::velocity, in, params, samples);
  const VerticalProfile c = sample_profile(ProfileOp::concentration, in, params, samples);
  auto out = fmt::output_file(
      (dir / fmt::format("profile_x{}_t{}.csv", number_tag(x), number_tag(s.t))).string());
  out.print("Z,velocity,concentration\n");
  for (std::size_t k = 0; k < u.zs.size(); ++k)
    out.print("{},{},{}\n", g17(u.zs[k]), g17(u.values[k]), g17(c.values[k]));
}

void write_summary(const fs::path& dir, const ScenarioConfig& config,
                   const ScenarioResult& r, const std::string& status) {
  std::ofstream out(dir / "summary.txt");
  const FlowState& s = r.final_state;
  const Field fr = froude(s);
  out << "status = " << status << '\n';
  out << "model = " << to_string(config.model.rhs) << '\n';
  out << "t_final = " << g17(s.t) << '\n';
  out << "steps = " << r.stats.steps << '\n';
  out << "clamped_cells = " << r.stats.clamped_cells << '\n';
  out << "mass_drift = " << g17(r.mass_drift) << '\n';
  out << "wall_seconds = " << fmt::format("{:.3f}", r.wall_seconds) << '\n';
  const auto range = [&out](const char* name, const Field& f) {
    out << name << "_min = " << g17(f.min()) << '\n';
    out << name << "_max = " << g17(f.max()) << '\n';
  };
  range("h", s.h);
  range("ubar", s.ubar);
  range("vbar", s.vbar);
  range("cbar", s.cbar);
  range("froude", fr);
  out << "cbar_mean = " << g17(s.cbar.mean()) << '\n';
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<fs::path>& out_dir) {
  validate(config);
  const ModelParams params = make_params(config);
  const SolverOptions options = make_solver_options(config);
  if (out_dir) fs::create_directories(*out_dir);

  ScenarioResult result;
  result.initial = build_initial_state(config, params);
  result.final_state = result.initial;
  const double volume0 = result.initial.h.sum();

  for (double x : config.output.probes) result.probes.push_back(ProbeSeries{x, {}, {}, {}, {}});
  const double interval = config.output.probe_interval;
  double next_sample = result.initial.t;

  RunHooks hooks;
  hooks.stop_times = config.output.snapshots;
  hooks.on_step = [&](const FlowState& s) {
    if (s.t + 1e-12 < next_sample) return;
    for (ProbeSeries& p : result.probes) {
      p.times.push_back(s.t);
      p.h.push_back(sample_at_x(s.h, s.grid, p.x_location));
      p.ubar.push_back(sample_at_x(s.ubar, s.grid, p.x_location));
      p.cbar.push_back(sample_at_x(s.cbar, s.grid, p.x_location));
    }
    while (next_sample <= s.t + 1e-12) next_sample += interval;
    result.final_state = s;
  };
  hooks.on_stop = [&](const FlowState& s) {
    result.snapshots.push_back(s);
    if (!out_dir) return;
    write_snapshot(*out_dir, s);
    for (double x : config.output.probes)
      write_profiles(*out_dir, s, params, x, config.output.profile_samples, options.eps_q);
  };

  const auto start = std::chrono::steady_clock::now();
  const auto finish = [&](const std::string& status) {
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.mass_drift = std::abs(result.final_state.h.sum() - volume0) / volume0;
    if (!out_dir) return;
    for (const ProbeSeries& p : result.probes) write_probe(*out_dir, p);
    write_summary(*out_dir, config, result, status);
  };

  try {
    result.final_state =
        run(result.initial, params, options, config.model.t_end, hooks, &result.stats);
  } catch (const SolverError& e) {
    finish(fmt::format("failed: {}", e.what()));
    throw;
  }
  finish("ok");
  return result;
}

std::vector<fs::path> emit_figure_data(const std::string& which, const ModelParams& params,
                                       const fs::path& dir) {
  static const std::vector<std::string> keys{"concentration_profiles", "velocity_profile",
                                             "shear_profile", "spectrum"};
  if (which == "all") {
    std::vector<fs::path> written;
    for (const auto& key : keys) {
      auto files = emit_figure_data(key, params, dir);
      written.insert(written.end(), files.begin(), files.end());
    }
    return written;
  }
  if (std::find(keys.begin(), keys.end(), which) == keys.end())
    throw std::invalid_argument(fmt::format("unknown figure key '{}'", which));

  fs::create_directories(dir);
  std::vector<fs::path> written;
  constexpr int samples = 101;
  const double tan_theta = params.tan_theta();
  const double q = steady_profile_speed(tan_theta);

  if (which == "concentration_profiles") {
    for (double d : figure_particle_sizes) {
      const ModelParams p(tan_theta, params.s(), d, params.c_D(), params.c_u(), params.c_t());
      const double cbar = equilibrium_concentration(p.c_ae(), p.w_f(), q);
      ProfileInputs in;
      in.cbar = cbar;
      in.ubar = q;
      in.q = q;
      const VerticalProfile poly =
          sample_profile(ProfileOp::concentration_steady, in, p, samples);
      const VerticalProfile analytic =
          sample_profile(ProfileOp::concentration_analytic, in, p, samples);
      const fs::path path = dir / fmt::format("concentration_profiles_d{:g}.csv", d);
      auto out = fmt::output_file(path.string());
      out.print("Z,value,analytic\n");
      for (std::size_t k = 0; k < poly.zs.size(); ++k)
        out.print("{},{},{}\n", g17(poly.zs[k]), g17(poly.values[k]), g17(analytic.values[k]));
      written.push_back(path);
    }
  } else if (which == "velocity_profile") {
    const fs::path path = dir / "velocity_profile.csv";
    auto out = fmt::output_file(path.string());
    out.print("Z,value\n");
    // u(Z)/u(1) does not depend on the slope; evaluate at unit slope so the
    // table is defined even for a flat configuration.
    const double top = velocity_profile_steady(1.0, 1.0, params.c_t());
    for (int k = 0; k < samples; ++k) {
      const double Z = k == samples - 1 ? 1.0 : static_cast<double>(k) / (samples - 1);
      out.print("{},{}\n", g17(Z), g17(velocity_profile_steady(Z, 1.0, params.c_t()) / top));
    }
    written.push_back(path);
  } else if (which == "shear_profile") {
    const fs::path path = dir / "shear_profile.csv";
    auto out = fmt::output_file(path.string());
    out.print("Z,value\n");
    for (int k = 0; k < samples; ++k) {
      const double Z = k == samples - 1 ? 1.0 : static_cast<double>(k) / (samples - 1);
      out.print("{},{}\n", g17(Z), g17(shear_stress_profile(Z, 1.0)));
    }
    written.push_back(path);
  } else {
    const fs::path path = dir / "spectrum.csv";
    auto out = fmt::output_file(path.string());
    out.print("family,index,k,lambda\n");
    const Equilibrium eq = steady_equilibrium(params);
    const double speed = eq.q > 0.0 ? eq.q : 1.0;
    const double nu = equilibrium_eddy_viscosity(params.c_t(), 1.0, speed, params.c_u());
    constexpr int modes = 8;
    const auto table = [&](const char* family, const std::vector<double>& ks) {
      const std::vector<double> lambdas = decay_rates(nu, ks);
      for (std::size_t m = 0; m < ks.size(); ++m)
        out.print("{},{},{},{}\n", family, m + 1, g17(ks[m]), g17(lambdas[m]));
    };
    table("velocity", velocity_wavenumbers(params.c_u(), modes));
    table("concentration", concentration_wavenumbers(1.0, modes));
    written.push_back(path);
  }
  return written;
}

}  // namespace sedflow
