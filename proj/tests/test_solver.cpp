#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sedflow/solver.hpp"

using namespace sedflow;

namespace {

const ModelParams params(0.01, 2.65, 6e-5);

FlowState wavy(const Grid& g, double amp = 1.0) {
  const Equilibrium eq = steady_equilibrium(params);
  FlowState s(g, 1.0, eq.U, 0.0, eq.Cbar);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = 2.0 * std::numbers::pi * g.x(i) / g.lx;
      const double y = 2.0 * std::numbers::pi * g.y(j) / g.ly;
      s.h(i, j) = 1.0 + amp * (0.1 * std::sin(x) + 0.05 * std::cos(2.0 * y));
      s.ubar(i, j) = eq.U * (1.0 + amp * 0.05 * std::cos(x + y));
      s.vbar(i, j) = amp * 0.2 * std::sin(y - x);
      s.cbar(i, j) = eq.Cbar * (1.0 + amp * 0.1 * std::sin(2.0 * x + y));
      s.b(i, j) = amp * 0.1 * std::cos(x) * std::sin(y);
    }
  return s;
}

// Pointwise re-derivation of the discrete comprehensive right-hand side with
// explicit periodic index arithmetic.
struct NodeOracle {
  const FlowState& s;
  const ModelParams& p;
  int i, j;

  double at(const Field& f, int di, int dj) const {
    return f(s.grid.wrap_x(i + di), s.grid.wrap_y(j + dj));
  }
  double at_node(const Field& f, int ii, int jj) const {
    return f(s.grid.wrap_x(ii), s.grid.wrap_y(jj));
  }
  double q(int di = 0, int dj = 0) const {
    const double u = at(s.ubar, di, dj);
    const double v = at(s.vbar, di, dj);
    return std::sqrt(u * u + v * v + 1e-16);
  }
  double cx(const Field& f) const { return (at(f, 1, 0) - at(f, -1, 0)) / (2 * s.grid.dx()); }
  double cy(const Field& f) const { return (at(f, 0, 1) - at(f, 0, -1)) / (2 * s.grid.dy()); }
  double upx(double vel, const Field& f) const {
    const double d = s.grid.dx();
    return vel * (vel > 0 ? (at(f, 0, 0) - at(f, -1, 0)) / d : (at(f, 1, 0) - at(f, 0, 0)) / d);
  }
  double upy(double vel, const Field& f) const {
    const double d = s.grid.dy();
    return vel * (vel > 0 ? (at(f, 0, 0) - at(f, 0, -1)) / d : (at(f, 0, 1) - at(f, 0, 0)) / d);
  }
  // d/dx (h_face^2 d/dx f) with mean face depth.
  double dispx(const Field& f) const {
    const double d = s.grid.dx();
    const double hr = 0.5 * (at(s.h, 0, 0) + at(s.h, 1, 0));
    const double hl = 0.5 * (at(s.h, -1, 0) + at(s.h, 0, 0));
    return (hr * hr * (at(f, 1, 0) - at(f, 0, 0)) - hl * hl * (at(f, 0, 0) - at(f, -1, 0))) /
           (d * d);
  }
  double dispy(const Field& f) const {
    const double d = s.grid.dy();
    const double hr = 0.5 * (at(s.h, 0, 0) + at(s.h, 0, 1));
    const double hl = 0.5 * (at(s.h, 0, -1) + at(s.h, 0, 0));
    return (hr * hr * (at(f, 0, 1) - at(f, 0, 0)) - hl * hl * (at(f, 0, 0) - at(f, 0, -1))) /
           (d * d);
  }

  double dh() const {
    const double fx = (at(s.h, 1, 0) * at(s.ubar, 1, 0) - at(s.h, -1, 0) * at(s.ubar, -1, 0)) /
                      (2 * s.grid.dx());
    const double fy = (at(s.h, 0, 1) * at(s.vbar, 0, 1) - at(s.h, 0, -1) * at(s.vbar, 0, -1)) /
                      (2 * s.grid.dy());
    return -(fx + fy);
  }

  double du() const {
    const double h = at(s.h, 0, 0), u = at(s.ubar, 0, 0), v = at(s.vbar, 0, 0),
                 c = at(s.cbar, 0, 0), qq = q();
    const double eta_x = (at(s.h, 1, 0) + at(s.b, 1, 0) - at(s.h, -1, 0) - at(s.b, -1, 0)) /
                         (2 * s.grid.dx());
    const double dxx = dispx(s.ubar), dyy = dispy(s.ubar);
    return -0.00293 * u * qq / h + 0.993 * (p.tan_theta() - eta_x) -
           1.025 * upx(u, s.ubar) - 1.017 * upy(v, s.ubar) -
           0.00817 * (u * u / h * cx(s.h) - u * v / h * cy(s.h)) +
           0.0941 * qq / h * (dxx + dyy) + 0.0839 * (u * u - v * v) / (h * qq) * (dxx - dyy) +
           0.00257 * (p.s() - 1) * u * c * qq / h - 0.298 * (p.s() - 1) * h * cx(s.cbar);
  }

  double dv() const {
    const double h = at(s.h, 0, 0), u = at(s.ubar, 0, 0), v = at(s.vbar, 0, 0),
                 c = at(s.cbar, 0, 0), qq = q();
    const double eta_y = (at(s.h, 0, 1) + at(s.b, 0, 1) - at(s.h, 0, -1) - at(s.b, 0, -1)) /
                         (2 * s.grid.dy());
    const double dxx = dispx(s.vbar), dyy = dispy(s.vbar);
    return -0.00293 * v * qq / h + 0.993 * (0.0 - eta_y) - 1.025 * upy(v, s.vbar) -
           1.017 * upx(u, s.vbar) - 0.00809 * (u * v / h * cx(s.h) - v * v / h * cy(s.h)) +
           0.0941 * qq / h * (dyy + dxx) + 0.0839 * (v * v - u * u) / (h * qq) * (dyy - dxx) +
           0.00257 * (p.s() - 1) * v * c * qq / h - 0.298 * (p.s() - 1) * h * cy(s.cbar);
  }

  double dc() const {
    const double h = at(s.h, 0, 0), u = at(s.ubar, 0, 0), v = at(s.vbar, 0, 0),
                 c = at(s.cbar, 0, 0), qq = q();
    const double r = p.w_f() / qq;
    return -p.w_f() / h * (0.938 + 28.9 * r) * c + p.w_f() / h * (0.984 - 51.3 * r) * p.c_ae() -
           (1.01 - 3.09 * r) * (upx(u, s.cbar) + upy(v, s.cbar)) +
           0.0331 * qq / h * (dispx(s.cbar) + dispy(s.cbar)) +
           0.0271 * (u * u - v * v) / (h * qq) * (dispx(s.cbar) - dispy(s.cbar));
  }
};

double max_abs(const Tendency& k) {
  double m = 0.0;
  for (const Field* f : {&k.dh, &k.du, &k.dv, &k.dc})
    for (double v : f->values()) m = std::max(m, std::abs(v));
  return m;
}

bool equivariant(const Tendency& k, const Tendency& kt) {
  return k.dh.transposed() == kt.dh && k.du.transposed() == kt.dv &&
         k.dv.transposed() == kt.du && k.dc.transposed() == kt.dc;
}

FlowState roll_x(const FlowState& s, int shift) {
  FlowState out = s;
  for (const auto& [src, dst] :
       {std::pair{&s.h, &out.h}, {&s.ubar, &out.ubar}, {&s.vbar, &out.vbar},
        {&s.cbar, &out.cbar}, {&s.b, &out.b}})
    for (int j = 0; j < s.grid.ny; ++j)
      for (int i = 0; i < s.grid.nx; ++i) (*dst)(s.grid.wrap_x(i + shift), j) = (*src)(i, j);
  return out;
}

}  // namespace

TEST_CASE("comprehensive tendency matches a pointwise oracle") {
  const FlowState s = wavy(Grid(10, 7, 5.0, 3.0));
  const Tendency k = tendency_full(s, params);
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const NodeOracle o{s, params, i, j};
      CHECK(k.dh(i, j) == doctest::Approx(o.dh()).epsilon(1e-12).scale(1e-3));
      CHECK(k.du(i, j) == doctest::Approx(o.du()).epsilon(1e-12).scale(1e-3));
      CHECK(k.dv(i, j) == doctest::Approx(o.dv()).epsilon(1e-12).scale(1e-3));
      CHECK(k.dc(i, j) == doctest::Approx(o.dc()).epsilon(1e-12).scale(1e-5));
    }
}

TEST_CASE("leading tendency on uniform data reduces to the local balance") {
  const Grid g(4, 3, 1.0, 1.0);
  const FlowState s(g, 1.3, 1.5, -0.4, 0.002);
  SolverOptions opt;
  opt.model = Model::leading;
  const Tendency k = tendency_leading(s, params, opt);
  const double q = std::hypot(1.5, -0.4);
  CHECK(k.dh.max() == 0.0);
  CHECK(k.du[0] == doctest::Approx(-0.00293 * 1.5 * q / 1.3 + 0.993 * 0.01).epsilon(1e-13));
  CHECK(k.dv[5] == doctest::Approx(0.00293 * 0.4 * q / 1.3).epsilon(1e-13));
  CHECK(k.dc[7] ==
        doctest::Approx(-params.w_f() / 1.3 * (0.938 * 0.002 - 0.984 * params.c_ae()))
            .epsilon(1e-13));
}

TEST_CASE("fluid at rest feels only gravity and entrainment") {
  const Grid g(6, 4, 3.0, 2.0);
  const FlowState s(g, 1.0, 0.0, 0.0, 0.0);
  SolverOptions leading;
  leading.model = Model::leading;
  const Tendency k = tendency_leading(s, params, leading);
  for (std::size_t n = 0; n < g.size(); ++n) {
    CHECK(k.du[n] == doctest::Approx(0.993 * 0.01).epsilon(1e-12));
    CHECK(k.dv[n] == 0.0);
    CHECK(k.dh[n] == 0.0);
    CHECK(k.dc[n] == doctest::Approx(params.w_f() * 0.984 * params.c_ae()).epsilon(1e-6));
  }

  // With a rippled surface the momentum tendency is 0.993 (tan - d(h+b)/dx).
  FlowState bumpy = s;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      bumpy.h(i, j) = 1.0 + 0.1 * std::sin(2.0 * std::numbers::pi * g.x(i) / g.lx);
      bumpy.b(i, j) = 0.05 * std::cos(2.0 * std::numbers::pi * g.x(i) / g.lx);
    }
  const Tendency kb = tendency_full(bumpy, params);
  const Field eta_x = ddx(bumpy.h, g);
  const Field b_x = ddx(bumpy.b, g);
  for (std::size_t n = 0; n < g.size(); ++n)
    CHECK(kb.du[n] == doctest::Approx(0.993 * (0.01 - eta_x[n] - b_x[n])).epsilon(1e-10));
}

TEST_CASE("leading tendency near the uniform fixed point") {
  const Equilibrium eq = steady_equilibrium(params);
  const Grid g(8, 4, 4.0, 2.0);
  SolverOptions opt;
  opt.model = Model::leading;
  const Tendency k = tendency_leading(FlowState(g, 1.0, eq.U, 0.0, eq.Cbar), params, opt);
  CHECK(max_abs(k) < 1e-3);
  // The leading concentration source vanishes at cbar = (0.984 / 0.938) c_ae.
  const double c_leading = 0.984 / 0.938 * params.c_ae();
  CHECK(c_leading / params.c_ae() == doctest::Approx(1.049).epsilon(1e-3));
  const Tendency kc = tendency_leading(FlowState(g, 1.0, eq.U, 0.0, c_leading), params, opt);
  CHECK(std::abs(kc.dc.max()) < 1e-18);
}

TEST_CASE("leading advection prefactor") {
  // Concentration gradient along x with unit speed: dc = -prefactor u dc/dx.
  const ModelParams flat(0.0, 2.65, 6e-5);
  const double q = flat.w_f() / 0.005215;
  const Grid g(16, 1, 16.0, 1.0);
  FlowState s(g, 1.0, q, 0.0, 0.0);
  for (int i = 0; i < g.nx; ++i) s.cbar(i, 0) = 1e-3 * (1.0 + std::sin(2.0 * std::numbers::pi * i / 16));
  SolverOptions opt;
  opt.model = Model::leading;
  opt.artificial_diffusion = false;
  const Tendency k = tendency_leading(s, flat, opt);
  const int i = 5;
  const double upwind = q * (s.cbar(i, 0) - s.cbar(i - 1, 0)) / g.dx();
  const double settling = -flat.w_f() * 0.938 * s.cbar(i, 0);
  const double prefactor = -(k.dc(i, 0) - settling) / upwind;
  CHECK(prefactor == doctest::Approx(1.007 * std::exp(-3.073 * 0.005215)).epsilon(1e-12));
  CHECK(std::abs(prefactor - 0.9909) < 1e-4);
}

TEST_CASE("depth tendency approaches the analytic flux divergence") {
  const Equilibrium eq = steady_equilibrium(params);
  for (int nx : {64, 128}) {
    const Grid g(nx, 2, 100.0, 10.0);
    FlowState s(g, 1.0, eq.U, 0.0, eq.Cbar);
    const double k = 2.0 * std::numbers::pi / g.lx;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) s.h(i, j) = 1.0 + 0.1 * std::sin(k * g.x(i));
    const Tendency t = tendency_full(s, params);
    double err = 0.0;
    for (int i = 0; i < g.nx; ++i)
      err = std::max(err, std::abs(t.dh(i, 0) + eq.U * 0.1 * k * std::cos(k * g.x(i))));
    const double kdx = k * g.dx();
    CHECK(err < eq.U * 0.1 * k * kdx * kdx / 6.0 * 1.001);
  }
}

TEST_CASE("reference model equilibrium and advection-diffusion") {
  const Grid g(4, 3, 1.0, 1.0);
  CHECK(tendency_reference(FlowState(g, 1.0, 0.0, 0.0, params.c_ae()), params).dc.max() == 0.0);

  // Frozen uniform flow over a sinusoid: the analytic rate is
  // -u c' + 0.13 h q c'' - (w_f/h)(c - c_ae), reached at second order.
  for (int nx : {128, 256}) {
    const Grid line(nx, 1, 10.0, 1.0);
    FlowState s(line, 1.0, 0.5, 0.0, 0.0);
    const double k = 2.0 * std::numbers::pi / line.lx;
    for (int i = 0; i < nx; ++i) s.cbar(i, 0) = 0.004 + 0.001 * std::sin(k * line.x(i));
    const Tendency t = tendency_reference(s, params);
    double err = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double x = line.x(i);
      const double c = 0.004 + 0.001 * std::sin(k * x);
      const double exact = -params.w_f() * (c - params.c_ae()) -
                           0.5 * 0.001 * k * std::cos(k * x) -
                           0.13 * 0.5 * 0.001 * k * k * std::sin(k * x);
      err = std::max(err, std::abs(t.dc(i, 0) - exact));
    }
    // First-order upwinding: error bounded by u dx k^2 amplitude / 2.
    CHECK(err < 0.5 * line.dx() * k * k * 0.001 / 2.0 * 1.05);
  }
}

TEST_CASE("reference concentration equation on uniform data") {
  const Grid g(4, 3, 1.0, 1.0);
  const FlowState s(g, 0.8, 1.0, 0.0, 0.01);
  const Tendency k = tendency_reference(s, params);
  CHECK(k.dc[3] == doctest::Approx(-params.w_f() / 0.8 * (0.01 - params.c_ae())).epsilon(1e-13));
  CHECK(k.dh.max() == 0.0);
  CHECK(k.du.max() == 0.0);
}

TEST_CASE("reference model advection-diffusion stencil") {
  const FlowState s = wavy(Grid(9, 6, 4.0, 3.0));
  const Tendency k = tendency_reference(s, params);
  const int i = 4, j = 2;
  const NodeOracle o{s, params, i, j};
  const double dx = s.grid.dx(), dy = s.grid.dy();
  const double lap = (o.at(s.cbar, 1, 0) - 2 * o.at(s.cbar, 0, 0) + o.at(s.cbar, -1, 0)) / (dx * dx) +
                     (o.at(s.cbar, 0, 1) - 2 * o.at(s.cbar, 0, 0) + o.at(s.cbar, 0, -1)) / (dy * dy);
  const double h = s.h(i, j);
  const double expect = -params.w_f() / h * (s.cbar(i, j) - params.c_ae()) -
                        (o.upx(s.ubar(i, j), s.cbar) + o.upy(s.vbar(i, j), s.cbar)) +
                        0.13 * h * o.q() * lap;
  CHECK(k.dc(i, j) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("evaluate_tendency dispatches on the model") {
  const FlowState s = wavy(Grid(6, 4, 3.0, 2.0));
  SolverOptions opt;
  opt.model = Model::reference;
  const Tendency mixed = evaluate_tendency(s, params, opt);
  const Tendency full = tendency_full(s, params, opt);
  CHECK(mixed.du == full.du);
  CHECK(mixed.dc == tendency_reference(s, params, opt).dc);
  opt.model = Model::leading;
  CHECK(evaluate_tendency(s, params, opt).du == tendency_leading(s, params, opt).du);
}

TEST_CASE("uniform equilibrium is a fixed point and persists") {
  const Equilibrium eq = steady_equilibrium(params);
  const FlowState s0(Grid(16, 4, 100.0, 10.0), 1.0, eq.U, 0.0, eq.Cbar);
  CHECK(max_abs(tendency_full(s0, params)) < 1e-10);
  const SolverOptions opt;
  FlowState s = s0;
  const double dt = cfl_dt(s, params, opt);
  for (int n = 0; n < 1000; ++n) s = step_rk4(s, params, dt, opt);
  CHECK(max_abs_difference(s.h, s0.h) < 1e-8);
  CHECK(max_abs_difference(s.ubar, s0.ubar) < 1e-8);
  CHECK(max_abs_difference(s.vbar, s0.vbar) < 1e-8);
  CHECK(max_abs_difference(s.cbar, s0.cbar) < 1e-8);
}

TEST_CASE("depth tendency sums to zero") {
  for (Model m : {Model::leading, Model::full, Model::reference}) {
    SolverOptions opt;
    opt.model = m;
    const FlowState s = wavy(Grid(24, 8, 12.0, 4.0));
    const Tendency k = evaluate_tendency(s, params, opt);
    CHECK(std::abs(k.dh.sum()) < 1e-13 * static_cast<double>(k.dh.size()));
  }
}

TEST_CASE("leading tendency is exactly transpose-equivariant") {
  const FlowState s = wavy(Grid(12, 8, 6.0, 4.0));
  SolverOptions opt;
  opt.model = Model::leading;
  SolverOptions opt_t = opt;
  opt_t.forcing_axis = Axis::y;
  CHECK(equivariant(tendency_leading(s, params, opt),
                    tendency_leading(s.transposed(), params, opt_t)));
}

TEST_CASE("comprehensive tendency is equivariant apart from the depth-gradient pair") {
  const FlowState s = wavy(Grid(12, 8, 6.0, 4.0));
  SolverOptions opt;
  SolverOptions opt_t;
  opt_t.forcing_axis = Axis::y;
  CHECK_FALSE(equivariant(tendency_full(s, params, opt),
                          tendency_full(s.transposed(), params, opt_t)));
  for (SolverOptions* o : {&opt, &opt_t}) {
    o->full.depth_gradient_u = 0.0;
    o->full.depth_gradient_v = 0.0;
  }
  CHECK(equivariant(tendency_full(s, params, opt),
                    tendency_full(s.transposed(), params, opt_t)));
}

TEST_CASE("tendencies commute with periodic shifts in x") {
  const FlowState s = wavy(Grid(16, 4, 8.0, 2.0));
  for (Model m : {Model::leading, Model::full, Model::reference}) {
    SolverOptions opt;
    opt.model = m;
    const Tendency k = evaluate_tendency(s, params, opt);
    const Tendency ks = evaluate_tendency(roll_x(s, 5), params, opt);
    for (int j = 0; j < s.grid.ny; ++j)
      for (int i = 0; i < s.grid.nx; ++i) {
        CHECK(ks.du(s.grid.wrap_x(i + 5), j) == k.du(i, j));
        CHECK(ks.dc(s.grid.wrap_x(i + 5), j) == k.dc(i, j));
      }
  }
}

TEST_CASE("y-uniform data keeps vbar exactly zero") {
  const Equilibrium eq = steady_equilibrium(params);
  const Grid g(32, 4, 10.0, 2.0);
  FlowState s(g, 1.0, eq.U, 0.0, eq.Cbar);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      s.h(i, j) = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * g.x(i) / g.lx);
      s.b(i, j) = 0.1 * std::cos(4.0 * std::numbers::pi * g.x(i) / g.lx);
    }
  const SolverOptions opt;
  for (int n = 0; n < 50; ++n) s = step_rk4(s, params, cfl_dt(s, params, opt), opt);
  CHECK(s.vbar.min() == 0.0);
  CHECK(s.vbar.max() == 0.0);
}

TEST_CASE("RK4 is fourth order on linear settling") {
  // At rest on a flat slope with c_ae = 0 the reference model reduces to
  // c' = -w_f c / h, solved exactly by an exponential.
  const ModelParams flat(0.0, 2.65, 6e-5);
  SolverOptions opt;
  opt.model = Model::reference;
  const double lambda = flat.w_f() / 0.5;
  const double T = 40.0;
  std::vector<double> errors;
  for (int steps : {8, 16, 32}) {
    FlowState s(Grid(2, 2, 1.0, 1.0), 0.5, 0.0, 0.0, 0.01);
    const double dt = T / steps;
    for (int n = 0; n < steps; ++n) s = step_rk4(s, flat, dt, opt);
    CHECK(s.t == doctest::Approx(T));
    errors.push_back(std::abs(s.cbar[0] - 0.01 * std::exp(-lambda * T)));
  }
  CHECK(errors[0] / errors[1] == doctest::Approx(16.0).epsilon(0.05));
  CHECK(errors[1] / errors[2] == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("negative concentration is clamped and counted") {
  FlowState s(Grid(4, 2, 1.0, 1.0), 1.0, 0.0, 0.0, 0.0);
  s.cbar(1, 0) = -1e-3;
  s.cbar(2, 1) = -2e-3;
  const ModelParams flat(0.0, 2.65, 6e-5);
  SolverOptions opt;
  opt.model = Model::reference;
  std::size_t clamped = 0;
  const FlowState next = step_rk4(s, flat, 0.1, opt, &clamped);
  // The regularised speed leaves a tiny dispersion that can push the
  // neighbours of the negative cells below zero as well.
  CHECK(clamped >= 2);
  CHECK(next.cbar.min() == 0.0);
}

TEST_CASE("solver errors on dry or non-finite states") {
  FlowState s(Grid(4, 2, 1.0, 1.0), 1.0, 0.5, 0.0, 0.001);
  s.h(2, 1) = 0.0;
  try {
    (void)tendency_full(s, params);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverError::Kind::nonpositive_depth);
  }

  s.h(2, 1) = 1.0;
  s.ubar(0, 0) = std::nan("");
  CHECK_THROWS_AS((void)tendency_leading(s, params), SolverError);

  FlowState wave = wavy(Grid(8, 4, 4.0, 2.0));
  SolverOptions opt;
  opt.h_min = 0.95;
  try {
    (void)step_rk4(wave, params, 1e-3, opt);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverError::Kind::nonpositive_depth);
    CHECK(e.time() == doctest::Approx(1e-3));
  }
  CHECK_THROWS_AS((void)step_rk4(wave, params, 0.0, SolverOptions{}), std::invalid_argument);
}

TEST_CASE("shape mismatch is rejected") {
  FlowState s(Grid(4, 2, 1.0, 1.0), 1.0, 0.5, 0.0, 0.001);
  s.cbar = Field(3, 2);
  CHECK_THROWS_AS((void)tendency_full(s, params), std::invalid_argument);
}

TEST_CASE("cfl step from the wave and dispersion limits") {
  const Grid g(10, 5, 10.0, 1.0);
  const FlowState s(g, 1.0, 2.0, 0.0, 0.0);
  SolverOptions opt;
  const double wave = std::min(g.dx() / 3.0, g.dy() / 1.0);
  const double diffusion = std::min(g.dx() * g.dx(), g.dy() * g.dy()) / (4.0 * 0.0941 * 2.0);
  CHECK(cfl_dt(s, params, opt) == doctest::Approx(0.25 * std::min(wave, diffusion)));
  opt.cfl = 0.5;
  CHECK(cfl_dt(s, params, opt) == doctest::Approx(0.5 * std::min(wave, diffusion)));
  opt.cfl = 0.0;
  CHECK_THROWS_AS((void)cfl_dt(s, params, opt), std::invalid_argument);
}

TEST_CASE("artificial diffusion defaults on for the leading model only") {
  SolverOptions opt;
  CHECK_FALSE(opt.use_artificial_diffusion());
  opt.model = Model::leading;
  CHECK(opt.use_artificial_diffusion());
  opt.artificial_diffusion = false;
  CHECK_FALSE(opt.use_artificial_diffusion());

  // Diffusion adds nu_x d2u/dx2 with nu_x = 0.01 dx max(|u| + sqrt h).
  const FlowState s = wavy(Grid(12, 6, 6.0, 3.0));
  SolverOptions off;
  off.model = Model::leading;
  off.artificial_diffusion = false;
  SolverOptions on = off;
  on.artificial_diffusion = true;
  const Tendency a = tendency_leading(s, params, off);
  const Tendency b = tendency_leading(s, params, on);
  double speed_x = 0.0, speed_y = 0.0;
  for (std::size_t n = 0; n < s.h.size(); ++n) {
    speed_x = std::max(speed_x, std::abs(s.ubar[n]) + std::sqrt(s.h[n]));
    speed_y = std::max(speed_y, std::abs(s.vbar[n]) + std::sqrt(s.h[n]));
  }
  const double nux = 0.01 * s.grid.dx() * speed_x, nuy = 0.01 * s.grid.dy() * speed_y;
  const NodeOracle o{s, params, 3, 2};
  const double dx = s.grid.dx(), dy = s.grid.dy();
  const double uxx = (o.at(s.ubar, 1, 0) - 2 * o.at(s.ubar, 0, 0) + o.at(s.ubar, -1, 0)) / (dx * dx);
  const double uyy = (o.at(s.ubar, 0, 1) - 2 * o.at(s.ubar, 0, 0) + o.at(s.ubar, 0, -1)) / (dy * dy);
  CHECK(b.du(3, 2) - a.du(3, 2) == doctest::Approx(nux * uxx + nuy * uyy).epsilon(1e-9));
  CHECK(b.dh == a.dh);
}

TEST_CASE("run lands on stop times and t_end without disturbing the steps") {
  const FlowState s0 = wavy(Grid(16, 4, 8.0, 2.0), 0.5);
  const SolverOptions opt;
  RunStats plain_stats;
  const FlowState plain = run(s0, params, opt, 2.0, {}, &plain_stats);
  CHECK(plain.t == 2.0);

  std::vector<double> stops_seen;
  std::size_t step_calls = 0;
  RunHooks hooks;
  hooks.on_step = [&](const FlowState&) { ++step_calls; };
  RunStats watched_stats;
  const FlowState watched = run(s0, params, opt, 2.0, hooks, &watched_stats);
  CHECK(watched == plain);
  CHECK(step_calls == watched_stats.steps + 1);
  CHECK(watched_stats.steps == plain_stats.steps);

  hooks.stop_times = {1.0, 0.0, 3.5, 0.37};
  hooks.on_stop = [&](const FlowState& s) { stops_seen.push_back(s.t); };
  const FlowState stopped = run(s0, params, opt, 2.0, hooks);
  CHECK(stopped.t == 2.0);
  REQUIRE(stops_seen.size() == 3);
  CHECK(stops_seen[0] == 0.0);
  CHECK(stops_seen[1] == 0.37);
  CHECK(stops_seen[2] == 1.0);

  CHECK_THROWS_AS((void)run(s0, params, opt, -1.0), std::invalid_argument);
}

TEST_CASE("model names round-trip") {
  for (Model m : {Model::leading, Model::full, Model::reference})
    CHECK(model_from_string(to_string(m)) == m);
  CHECK_FALSE(model_from_string("Full").has_value());
}

TEST_CASE("regularized speed") {
  const Field u(2, 1, 3.0), v(2, 1, 4.0);
  CHECK(regularized_speed(u, v)[1] == doctest::Approx(5.0));
  CHECK(regularized_speed(Field(2, 1), Field(2, 1), 1e-8)[0] == doctest::Approx(1e-8));
  CHECK_THROWS_AS(regularized_speed(u, Field(1, 2)), std::invalid_argument);
}
