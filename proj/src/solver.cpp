#include "sedflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace sedflow {

FlowState::FlowState(const Grid& g, double h0, double u0, double v0, double c0)
    : grid(g), h(g, h0), ubar(g, u0), vbar(g, v0), cbar(g, c0), b(g, 0.0) {}

void FlowState::check_shapes() const {
  for (const Field* f : {&h, &ubar, &vbar, &cbar, &b})
    if (!f->matches(grid))
      throw std::invalid_argument("FlowState: field does not match grid");
}

FlowState FlowState::transposed() const {
  FlowState out;
  out.grid = grid.transposed();
  out.t = t;
  out.h = h.transposed();
  out.ubar = vbar.transposed();
  out.vbar = ubar.transposed();
  out.cbar = cbar.transposed();
  out.b = b.transposed();
  return out;
}

const char* to_string(Model model) {
  switch (model) {
    case Model::leading: return "leading";
    case Model::full: return "full";
    case Model::reference: return "reference";
  }
  return "unknown";
}

std::optional<Model> model_from_string(const std::string& name) {
  if (name == "leading") return Model::leading;
  if (name == "full") return Model::full;
  if (name == "reference") return Model::reference;
  return std::nullopt;
}

SolverError::SolverError(Kind kind, double time, const std::string& what)
    : std::runtime_error(fmt::format("t = {:.6g}: {}", time, what)),
      kind_(kind),
      time_(time) {}

Field regularized_speed(const Field& ubar, const Field& vbar, double eps_q) {
  if (!ubar.same_shape(vbar))
    throw std::invalid_argument("regularized_speed: shape mismatch");
  Field q(ubar.nx(), ubar.ny());
  const double eps2 = eps_q * eps_q;
  for (std::size_t k = 0; k < q.size(); ++k)
    q[k] = std::sqrt(ubar[k] * ubar[k] + vbar[k] * vbar[k] + eps2);
  return q;
}

namespace {

// Neighbour access along one axis of a periodic grid, via precomputed flat
// index tables. Every stencil below is written once in terms of an AxisView
// so that the x and y versions perform identical arithmetic, which keeps
// the discrete operators exactly equivariant under transposition.
class AxisView {
 public:
  AxisView(const Grid& grid, Axis axis)
      : grid_(grid),
        spacing_(axis == Axis::x ? grid.dx() : grid.dy()),
        next_(grid.size()),
        prev_(grid.size()) {
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const std::size_t n = flat(i, j);
        if (axis == Axis::x) {
          next_[n] = flat(grid.wrap_x(i + 1), j);
          prev_[n] = flat(grid.wrap_x(i - 1), j);
        } else {
          next_[n] = flat(i, grid.wrap_y(j + 1));
          prev_[n] = flat(i, grid.wrap_y(j - 1));
        }
      }
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return next_.size(); }
  double spacing() const { return spacing_; }
  double next(const Field& f, std::size_t n) const { return f[next_[n]]; }
  double prev(const Field& f, std::size_t n) const { return f[prev_[n]]; }

 private:
  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nx) +
           static_cast<std::size_t>(i);
  }

  const Grid& grid_;
  double spacing_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
};

Field central(const Field& f, const AxisView& ax) {
  Field out(ax.grid());
  const double inv = 1.0 / (2.0 * ax.spacing());
  for (std::size_t n = 0; n < ax.size(); ++n) out[n] = (ax.next(f, n) - ax.prev(f, n)) * inv;
  return out;
}

// vel * df/da, one-sided against the direction of vel.
Field upwind_advection(const Field& vel, const Field& f, const AxisView& ax) {
  Field out(ax.grid());
  const double d = ax.spacing();
  for (std::size_t n = 0; n < ax.size(); ++n) {
    const double v = vel[n];
    const double grad = v > 0.0 ? (f[n] - ax.prev(f, n)) / d : (ax.next(f, n) - f[n]) / d;
    out[n] = v * grad;
  }
  return out;
}

// d/da (h^2 df/da): face fluxes with the arithmetic-mean depth, then the
// difference of neighbouring faces.
Field dispersion(const Field& h, const Field& f, const AxisView& ax) {
  const double d = ax.spacing();
  Field flux(ax.grid());  // flux[n] lives on the face between n and its next
  for (std::size_t n = 0; n < ax.size(); ++n) {
    const double hf = 0.5 * (h[n] + ax.next(h, n));
    flux[n] = hf * hf * (ax.next(f, n) - f[n]) / d;
  }
  Field out(ax.grid());
  for (std::size_t n = 0; n < ax.size(); ++n) out[n] = (flux[n] - ax.prev(flux, n)) / d;
  return out;
}

Field second_difference(const Field& f, const AxisView& ax) {
  Field out(ax.grid());
  const double d = ax.spacing();
  const double inv = 1.0 / (d * d);
  for (std::size_t n = 0; n < ax.size(); ++n)
    out[n] = (ax.next(f, n) - 2.0 * f[n] + ax.prev(f, n)) * inv;
  return out;
}

Field product(const Field& a, const Field& b) {
  Field out(a.nx(), a.ny());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

Field sum(const Field& a, const Field& b) {
  Field out(a.nx(), a.ny());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

void validate(const FlowState& state, const SolverOptions& options) {
  state.check_shapes();
  const double hmin = state.h.min();
  if (!(hmin > 0.0))
    throw SolverError(SolverError::Kind::nonpositive_depth, state.t,
                      fmt::format("depth {:.6g} is not positive", hmin));
  for (const Field* f : {&state.h, &state.ubar, &state.vbar, &state.cbar})
    if (!f->all_finite())
      throw SolverError(SolverError::Kind::non_finite_field, state.t,
                        "state contains non-finite values");
  (void)options;
}

void check_finite(const Tendency& k, double t) {
  for (const Field* f : {&k.dh, &k.du, &k.dv, &k.dc})
    if (!f->all_finite())
      throw SolverError(SolverError::Kind::non_finite_field, t,
                        "tendency contains non-finite values");
}

// Depth equation in flux form: -d/dx(h u) - d/dy(h v).
Field depth_tendency(const FlowState& s, const AxisView& ax, const AxisView& ay) {
  const Field flux_x = central(product(s.h, s.ubar), ax);
  const Field flux_y = central(product(s.h, s.vbar), ay);
  Field dh(s.grid);
  for (std::size_t k = 0; k < dh.size(); ++k) dh[k] = -(flux_x[k] + flux_y[k]);
  return dh;
}

struct ArtificialDiffusion {
  double nu_x = 0.0;
  double nu_y = 0.0;
};

ArtificialDiffusion artificial_diffusion(const FlowState& s) {
  double speed_x = 0.0;
  double speed_y = 0.0;
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    const double wave = std::sqrt(gravity * s.h[k]);
    speed_x = std::max(speed_x, std::abs(s.ubar[k]) + wave);
    speed_y = std::max(speed_y, std::abs(s.vbar[k]) + wave);
  }
  return {0.01 * s.grid.dx() * speed_x, 0.01 * s.grid.dy() * speed_y};
}

void add_artificial_diffusion(const FlowState& s, Tendency& k) {
  const AxisView ax{s.grid, Axis::x};
  const AxisView ay{s.grid, Axis::y};
  const ArtificialDiffusion nu = artificial_diffusion(s);
  const auto apply = [&](const Field& f, Field& out) {
    const Field fxx = second_difference(f, ax);
    const Field fyy = second_difference(f, ay);
    for (std::size_t n = 0; n < out.size(); ++n)
      out[n] += nu.nu_x * fxx[n] + nu.nu_y * fyy[n];
  };
  apply(s.ubar, k.du);
  apply(s.vbar, k.dv);
  apply(s.cbar, k.dc);
}

double slope_along(const ModelParams& params, const SolverOptions& options,
                   Axis axis) {
  return options.forcing_axis == axis ? params.tan_theta() : 0.0;
}

}  // namespace

Tendency tendency_leading(const FlowState& s, const ModelParams& params,
                          const SolverOptions& options) {
  validate(s, options);
  const LeadingModelCoefficients& k = options.leading;
  const AxisView ax{s.grid, Axis::x};
  const AxisView ay{s.grid, Axis::y};
  const Field q = regularized_speed(s.ubar, s.vbar, options.eps_q);
  const Field eta = sum(s.h, s.b);
  const double buoyancy = params.s() - 1.0;

  Tendency out(s.grid);
  out.dh = depth_tendency(s, ax, ay);

  // a: velocity along `along`, c: velocity along `across`.
  const auto momentum = [&](const Field& a, const Field& c, const AxisView& along,
                            const AxisView& across, double slope, Field& da) {
    const Field deta = central(eta, along);
    const Field dconc = central(s.cbar, along);
    const Field self_adv = upwind_advection(a, a, along);
    const Field cross_adv = upwind_advection(c, a, across);
    for (std::size_t n = 0; n < da.size(); ++n) {
      da[n] = -k.drag * a[n] * q[n] / s.h[n] + k.forcing * (slope - deta[n]) -
              k.self_advection * self_adv[n] - k.cross_advection * cross_adv[n] -
              k.sediment_pressure * buoyancy * s.h[n] * dconc[n];
    }
  };
  momentum(s.ubar, s.vbar, ax, ay, slope_along(params, options, Axis::x), out.du);
  momentum(s.vbar, s.ubar, ay, ax, slope_along(params, options, Axis::y), out.dv);

  const Field adv_x = upwind_advection(s.ubar, s.cbar, ax);
  const Field adv_y = upwind_advection(s.vbar, s.cbar, ay);
  const double w_f = params.w_f();
  for (std::size_t n = 0; n < out.dc.size(); ++n) {
    const double advection = k.advection * std::exp(-k.advection_decay * w_f / q[n]);
    out.dc[n] = -w_f / s.h[n] * (k.deposition * s.cbar[n] - k.entrainment * params.c_ae()) -
                advection * (adv_x[n] + adv_y[n]);
  }

  if (options.use_artificial_diffusion()) add_artificial_diffusion(s, out);
  check_finite(out, s.t);
  return out;
}

Tendency tendency_full(const FlowState& s, const ModelParams& params,
                       const SolverOptions& options) {
  validate(s, options);
  const FullModelCoefficients& k = options.full;
  const AxisView ax{s.grid, Axis::x};
  const AxisView ay{s.grid, Axis::y};
  const Field q = regularized_speed(s.ubar, s.vbar, options.eps_q);
  const Field eta = sum(s.h, s.b);
  const double buoyancy = params.s() - 1.0;

  Tendency out(s.grid);
  out.dh = depth_tendency(s, ax, ay);

  const Field dh_x = central(s.h, ax);
  const Field dh_y = central(s.h, ay);

  // The depth-gradient term is printed as
  //   u-eq: -k_u (u^2/h h_x - u v/h h_y)
  //   v-eq: -k_v (u v/h h_x - v^2/h h_y)
  // which have opposite orientation under the axis swap; `reversed` selects
  // the v-eq ordering.
  const auto momentum = [&](const Field& a, const Field& c, const AxisView& along,
                            const AxisView& across, const Field& dh_along,
                            const Field& dh_across, double slope,
                            double depth_coeff, bool reversed, Field& da) {
    const Field deta = central(eta, along);
    const Field dconc = central(s.cbar, along);
    const Field self_adv = upwind_advection(a, a, along);
    const Field cross_adv = upwind_advection(c, a, across);
    const Field disp_along = dispersion(s.h, a, along);
    const Field disp_across = dispersion(s.h, a, across);
    for (std::size_t n = 0; n < da.size(); ++n) {
      const double h = s.h[n];
      const double along_term = a[n] * a[n] / h * dh_along[n];
      const double across_term = a[n] * c[n] / h * dh_across[n];
      const double depth_gradient =
          reversed ? across_term - along_term : along_term - across_term;
      da[n] = -k.drag * a[n] * q[n] / h + k.forcing * (slope - deta[n]) -
              k.self_advection * self_adv[n] - k.cross_advection * cross_adv[n] -
              depth_coeff * depth_gradient +
              k.dispersion * q[n] / h * (disp_along[n] + disp_across[n]) +
              k.anisotropic_dispersion * (a[n] * a[n] - c[n] * c[n]) / (h * q[n]) *
                  (disp_along[n] - disp_across[n]) +
              k.sediment_drag * buoyancy * a[n] * s.cbar[n] * q[n] / h -
              k.sediment_pressure * buoyancy * h * dconc[n];
    }
  };
  momentum(s.ubar, s.vbar, ax, ay, dh_x, dh_y,
           slope_along(params, options, Axis::x), k.depth_gradient_u, false, out.du);
  momentum(s.vbar, s.ubar, ay, ax, dh_y, dh_x,
           slope_along(params, options, Axis::y), k.depth_gradient_v, true, out.dv);

  const Field adv_x = upwind_advection(s.ubar, s.cbar, ax);
  const Field adv_y = upwind_advection(s.vbar, s.cbar, ay);
  const Field disp_x = dispersion(s.h, s.cbar, ax);
  const Field disp_y = dispersion(s.h, s.cbar, ay);
  const double w_f = params.w_f();
  const double c_ae = params.c_ae();
  for (std::size_t n = 0; n < out.dc.size(); ++n) {
    const double h = s.h[n];
    const double ratio = w_f / q[n];
    const double u = s.ubar[n];
    const double v = s.vbar[n];
    out.dc[n] = -w_f / h * (k.deposition + k.deposition_settling * ratio) * s.cbar[n] +
                w_f / h * (k.entrainment - k.entrainment_settling * ratio) * c_ae -
                (k.advection - k.advection_settling * ratio) * (adv_x[n] + adv_y[n]) +
                k.c_dispersion * q[n] / h * (disp_x[n] + disp_y[n]) +
                k.c_anisotropic_dispersion * (u * u - v * v) / (h * q[n]) *
                    (disp_x[n] - disp_y[n]);
  }

  if (options.use_artificial_diffusion()) add_artificial_diffusion(s, out);
  check_finite(out, s.t);
  return out;
}

Tendency tendency_reference(const FlowState& s, const ModelParams& params,
                            const SolverOptions& options) {
  validate(s, options);
  const AxisView ax{s.grid, Axis::x};
  const AxisView ay{s.grid, Axis::y};
  const Field q = regularized_speed(s.ubar, s.vbar, options.eps_q);
  const Field adv_x = upwind_advection(s.ubar, s.cbar, ax);
  const Field adv_y = upwind_advection(s.vbar, s.cbar, ay);
  const Field cxx = second_difference(s.cbar, ax);
  const Field cyy = second_difference(s.cbar, ay);

  Tendency out(s.grid);
  const double w_f = params.w_f();
  for (std::size_t n = 0; n < out.dc.size(); ++n) {
    const double h = s.h[n];
    out.dc[n] = -w_f / h * (s.cbar[n] - params.c_ae()) - (adv_x[n] + adv_y[n]) +
                reference_model_dispersion * h * q[n] * (cxx[n] + cyy[n]);
  }
  check_finite(out, s.t);
  return out;
}

Tendency evaluate_tendency(const FlowState& state, const ModelParams& params,
                           const SolverOptions& options) {
  switch (options.model) {
    case Model::leading:
      return tendency_leading(state, params, options);
    case Model::full:
      return tendency_full(state, params, options);
    case Model::reference: {
      Tendency flow = tendency_full(state, params, options);
      flow.dc = tendency_reference(state, params, options).dc;
      return flow;
    }
  }
  throw std::logic_error("evaluate_tendency: unknown model");
}

namespace {

void axpy(Field& out, const Field& base, double a, const Field& k) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = base[n] + a * k[n];
}

FlowState stage(const FlowState& base, double a, const Tendency& k) {
  FlowState s = base;
  axpy(s.h, base.h, a, k.dh);
  axpy(s.ubar, base.ubar, a, k.du);
  axpy(s.vbar, base.vbar, a, k.dv);
  axpy(s.cbar, base.cbar, a, k.dc);
  s.t = base.t + a;
  return s;
}

void combine(Field& out, const Field& base, double dt, const Field& k1,
             const Field& k2, const Field& k3, const Field& k4) {
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = base[n] + dt / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
}

}  // namespace

FlowState step_rk4(const FlowState& state, const ModelParams& params, double dt,
                   const SolverOptions& options, std::size_t* clamped) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be positive");
  const Tendency k1 = evaluate_tendency(state, params, options);
  const Tendency k2 = evaluate_tendency(stage(state, 0.5 * dt, k1), params, options);
  const Tendency k3 = evaluate_tendency(stage(state, 0.5 * dt, k2), params, options);
  const Tendency k4 = evaluate_tendency(stage(state, dt, k3), params, options);

  FlowState next = state;
  combine(next.h, state.h, dt, k1.dh, k2.dh, k3.dh, k4.dh);
  combine(next.ubar, state.ubar, dt, k1.du, k2.du, k3.du, k4.du);
  combine(next.vbar, state.vbar, dt, k1.dv, k2.dv, k3.dv, k4.dv);
  combine(next.cbar, state.cbar, dt, k1.dc, k2.dc, k3.dc, k4.dc);
  next.t = state.t + dt;

  std::size_t count = 0;
  for (std::size_t n = 0; n < next.cbar.size(); ++n)
    if (next.cbar[n] < 0.0) {
      next.cbar[n] = 0.0;
      ++count;
    }
  if (clamped) *clamped += count;

  const double hmin = next.h.min();
  if (!(hmin > options.h_min))
    throw SolverError(SolverError::Kind::nonpositive_depth, next.t,
                      fmt::format("depth fell to {:.6g} (threshold {:.3g})", hmin,
                                  options.h_min));
  for (const Field* f : {&next.h, &next.ubar, &next.vbar, &next.cbar})
    if (!f->all_finite())
      throw SolverError(SolverError::Kind::non_finite_field, next.t,
                        "step produced non-finite values");
  return next;
}

double cfl_dt(const FlowState& s, const ModelParams& params,
              const SolverOptions& options) {
  (void)params;
  if (!(options.cfl > 0.0 && options.cfl <= 1.0))
    throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1]");
  const double dx = s.grid.dx();
  const double dy = s.grid.dy();
  double bound = std::numeric_limits<double>::infinity();
  double diffusivity = 0.0;
  for (std::size_t n = 0; n < s.h.size(); ++n) {
    const double wave = std::sqrt(gravity * s.h[n]);
    bound = std::min(bound, dx / (std::abs(s.ubar[n]) + wave));
    bound = std::min(bound, dy / (std::abs(s.vbar[n]) + wave));
    const double q = std::hypot(s.ubar[n], s.vbar[n]);
    diffusivity = std::max(diffusivity, options.full.dispersion * q * s.h[n]);
  }
  if (options.use_artificial_diffusion()) {
    const ArtificialDiffusion nu = artificial_diffusion(s);
    diffusivity = std::max({diffusivity, nu.nu_x, nu.nu_y});
  }
  if (diffusivity > 0.0) {
    bound = std::min(bound, dx * dx / (4.0 * diffusivity));
    bound = std::min(bound, dy * dy / (4.0 * diffusivity));
  }
  return options.cfl * bound;
}

FlowState run(const FlowState& initial, const ModelParams& params,
              const SolverOptions& options, double t_end, const RunHooks& hooks,
              RunStats* stats) {
  if (t_end < initial.t)
    throw std::invalid_argument("run: t_end precedes the initial time");

  std::vector<double> stops;
  for (double ts : hooks.stop_times)
    if (ts >= initial.t && ts <= t_end) stops.push_back(ts);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  auto next_stop = stops.begin();

  if (hooks.on_step) hooks.on_step(initial);
  while (next_stop != stops.end() && *next_stop <= initial.t) {
    if (hooks.on_stop) hooks.on_stop(initial);
    ++next_stop;
  }
  if (t_end == initial.t) return initial;

  FlowState state = initial;
  RunStats local;
  while (state.t < t_end) {
    const double target = next_stop != stops.end() ? *next_stop : t_end;
    double dt = cfl_dt(state, params, options);
    const bool lands = state.t + dt >= target - 1e-12 * std::max(1.0, std::abs(target));
    if (lands) dt = target - state.t;
    state = step_rk4(state, params, dt, options, &local.clamped_cells);
    if (lands) state.t = target;
    ++local.steps;
    if (hooks.on_step) hooks.on_step(state);
    if (lands && next_stop != stops.end() && *next_stop == target) {
      if (hooks.on_stop) hooks.on_stop(state);
      ++next_stop;
    }
  }
  if (stats) {
    stats->steps += local.steps;
    stats->clamped_cells += local.clamped_cells;
  }
  return state;
}

}  // namespace sedflow
