#include "sedflow/checks.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sedflow/profiles.hpp"
#include "sedflow/scenario.hpp"
#include "sedflow/spectrum.hpp"

namespace sedflow {

namespace {

double max_tendency(const Tendency& k) {
  double worst = 0.0;
  for (const Field* f : {&k.dh, &k.du, &k.dv, &k.dc})
    for (double v : f->values()) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_drift(const FlowState& a, const FlowState& b) {
  return std::max({max_abs_difference(a.h, b.h), max_abs_difference(a.ubar, b.ubar),
                   max_abs_difference(a.vbar, b.vbar), max_abs_difference(a.cbar, b.cbar)});
}

FlowState wavy_state(const Grid& grid, const ModelParams& params) {
  const Equilibrium eq = steady_equilibrium(params);
  FlowState s(grid, 1.0, eq.U, 0.0, eq.Cbar);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double x = 2.0 * std::numbers::pi * grid.x(i) / grid.lx;
      const double y = 2.0 * std::numbers::pi * grid.y(j) / grid.ly;
      s.h(i, j) = 1.0 + 0.1 * std::sin(x) + 0.05 * std::cos(2.0 * y);
      s.ubar(i, j) = eq.U * (1.0 + 0.05 * std::cos(x + y));
      s.vbar(i, j) = 0.2 * std::sin(y - x);
      s.cbar(i, j) = eq.Cbar * (1.0 + 0.1 * std::sin(2.0 * x + y));
      s.b(i, j) = 0.1 * std::cos(x) * std::sin(y);
    }
  return s;
}

bool transpose_equivariant(const Tendency& k, const Tendency& kt) {
  return k.dh.transposed() == kt.dh && k.du.transposed() == kt.dv &&
         k.dv.transposed() == kt.du && k.dc.transposed() == kt.dc;
}

CheckResult fixed_point() {
  const ModelParams params(0.01, 2.65, 6e-5);
  const Equilibrium eq = steady_equilibrium(params);
  const FlowState s(Grid(16, 4, 100.0, 10.0), 1.0, eq.U, 0.0, eq.Cbar);
  const double residual = max_tendency(tendency_full(s, params));
  return {"fixed-point residual", residual < 1e-10,
          fmt::format("max |tendency| = {:.3g} (< 1e-10)", residual)};
}

CheckResult persistence() {
  const ModelParams params(0.01, 2.65, 6e-5);
  const Equilibrium eq = steady_equilibrium(params);
  const FlowState s0(Grid(16, 4, 100.0, 10.0), 1.0, eq.U, 0.0, eq.Cbar);
  const SolverOptions options;
  FlowState s = s0;
  const double dt = cfl_dt(s, params, options);
  for (int n = 0; n < 1000; ++n) s = step_rk4(s, params, dt, options);
  const double drift = max_drift(s, s0);
  return {"equilibrium persistence (1000 steps)", drift < 1e-8,
          fmt::format("max drift = {:.3g} (< 1e-8)", drift)};
}

CheckResult conservation() {
  ScenarioConfig config;
  config.grid.nx = 128;
  config.grid.ny = 2;
  const ModelParams params = make_params(config);
  FlowState s = build_initial_state(config, params);
  const SolverOptions options = make_solver_options(config);
  const double v0 = s.h.sum();
  for (int n = 0; n < 1000; ++n) s = step_rk4(s, params, cfl_dt(s, params, options), options);
  const double drift = std::abs(s.h.sum() - v0) / v0;
  return {"volume conservation (1000 steps)", drift < 1e-10,
          fmt::format("relative drift = {:.3g} (< 1e-10)", drift)};
}

CheckResult symmetry() {
  const ModelParams params(0.01, 2.65, 6e-5);
  const FlowState s = wavy_state(Grid(12, 8, 6.0, 4.0), params);
  const FlowState st = s.transposed();

  SolverOptions leading;
  leading.model = Model::leading;
  SolverOptions leading_t = leading;
  leading_t.forcing_axis = Axis::y;
  const bool leading_ok = transpose_equivariant(tendency_leading(s, params, leading),
                                                tendency_leading(st, params, leading_t));

  SolverOptions full;
  full.full.depth_gradient_u = 0.0;
  full.full.depth_gradient_v = 0.0;
  SolverOptions full_t = full;
  full_t.forcing_axis = Axis::y;
  const bool full_ok = transpose_equivariant(tendency_full(s, params, full),
                                             tendency_full(st, params, full_t));
  return {"axis symmetry", leading_ok && full_ok,
          fmt::format("leading exact: {}, full exact without depth-gradient pair: {}",
                      leading_ok, full_ok)};
}

CheckResult spectrum() {
  double worst = 0.0;
  bool above_pi = true;
  for (double k : velocity_wavenumbers(ModelParams::default_c_u, 10)) {
    worst = std::max(worst, std::abs(velocity_characteristic(k, ModelParams::default_c_u)));
    above_pi = above_pi && k > std::numbers::pi;
  }
  for (double k : concentration_wavenumbers(1.0, 10)) {
    worst = std::max(worst, std::abs(concentration_characteristic(k, 1.0)));
    above_pi = above_pi && k > std::numbers::pi;
  }
  return {"spectrum roots", above_pi && worst < 1e-10,
          fmt::format("all k > pi: {}, max residual = {:.3g}", above_pi, worst)};
}

CheckResult normalisation() {
  // Depth averages of the leading polynomials by composite Simpson's rule.
  // Zero slope and cbar = 0 leave only the mean-shape line of u(Z).
  const ModelParams params(0.0, 2.65, 6e-5);
  ProfileInputs in;
  in.ubar = 1.0;
  const int panels = 2000;
  double c_mean = 0.0;
  double u_mean = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double Z = static_cast<double>(k) / panels;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    c_mean += w * concentration_profile_steady(Z, 1.0, 0.0, 0.0, 1.0);
    u_mean += w * velocity_profile(Z, in, params);
  }
  c_mean /= 3.0 * panels;
  u_mean /= 3.0 * panels;
  const bool ok = std::abs(c_mean - 1.00010) < 1e-4 && std::abs(u_mean - 0.99946) < 1e-4;
  return {"profile normalisation", ok,
          fmt::format("concentration mean {:.6f}, velocity mean {:.6f}", c_mean, u_mean)};
}

CheckResult lateral_symmetry() {
  ScenarioConfig config;
  config.grid.nx = 128;
  config.grid.ny = 4;
  const ModelParams params = make_params(config);
  FlowState s = build_initial_state(config, params);
  const SolverOptions options = make_solver_options(config);
  for (int n = 0; n < 200; ++n) s = step_rk4(s, params, cfl_dt(s, params, options), options);
  const double vmax = std::max(std::abs(s.vbar.min()), std::abs(s.vbar.max()));
  return {"y-uniform data keeps vbar = 0", vmax == 0.0,
          fmt::format("max |vbar| = {:.3g}", vmax)};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks() {
  return {fixed_point(), persistence(), conservation(), symmetry(),
          spectrum(),    normalisation(), lateral_symmetry()};
}

}  // namespace sedflow
