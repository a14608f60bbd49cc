#include "sedflow/params.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sedflow/coefficients.hpp"

namespace sedflow {

namespace {

// u(Z) / sqrt(tan/c_t) in steady uniform flow, ascending powers of Z.
constexpr std::array<double, 8> steady_velocity_poly = {
    2.18, 1.19, -0.297, -0.0533, -0.0173, -0.00366, -0.00115, -0.000089};

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

double falling_velocity(double s, double g, double d, double c_D) {
  require(s > 1.0, "falling_velocity: relative density s must exceed 1");
  require(g > 0.0, "falling_velocity: gravity must be positive");
  require(d > 0.0, "falling_velocity: particle size d must be positive");
  require(c_D > 0.0, "falling_velocity: drag coefficient must be positive");
  return std::sqrt(4.0 * (s - 1.0) * g * d / (3.0 * c_D));
}

double reference_concentration(double tan_theta, double d) {
  require(tan_theta >= 0.0, "reference_concentration: slope must be >= 0");
  require(d > 0.0 && d < 4.0, "reference_concentration: d must lie in (0, 4)");
  const double log_term = 1.39 - std::log(d);
  return 3.26 * std::pow(tan_theta, 1.5) /
         (std::pow(d, 0.8) * log_term * log_term * log_term);
}

double steady_velocity_polynomial_mean() {
  double mean = 0.0;
  for (std::size_t k = 0; k < steady_velocity_poly.size(); ++k)
    mean += steady_velocity_poly[k] / static_cast<double>(k + 1);
  return mean;
}

double smagorinski_constant_consistency() {
  const double ratio = steady_velocity_polynomial_mean() / 18.7;
  return ratio * ratio;
}

ModelParams::ModelParams(double tan_theta, double s, double d, double c_D,
                         double c_u)
    : ModelParams(tan_theta, s, d, c_D, c_u,
                  smagorinski_constant_consistency()) {}

ModelParams::ModelParams(double tan_theta, double s, double d, double c_D,
                         double c_u, double c_t)
    : tan_theta_(tan_theta), s_(s), d_(d), c_D_(c_D), c_u_(c_u), c_t_(c_t) {
  require(std::isfinite(tan_theta) && tan_theta >= 0.0,
          "ModelParams: tan_theta must be >= 0");
  require(c_u > 0.0, "ModelParams: slip constant c_u must be positive");
  require(c_t > 0.0, "ModelParams: Smagorinski constant c_t must be positive");
  w_f_ = falling_velocity(s, gravity, d, c_D);
  c_ae_ = reference_concentration(tan_theta, d);
}

ModelParams ModelParams::with_tan_theta(double tan_theta) const {
  return ModelParams(tan_theta, s_, d_, c_D_, c_u_, c_t_);
}

double equilibrium_concentration(double c_ae, double w_f, double q) {
  const FullModelCoefficients k;
  const double ratio = w_f / q;
  return c_ae * (k.entrainment - k.entrainment_settling * ratio) /
         (k.deposition + k.deposition_settling * ratio);
}

double uniform_speed_without_sediment(double tan_theta) {
  const FullModelCoefficients k;
  return std::sqrt(k.forcing * tan_theta / k.drag);
}

Equilibrium steady_equilibrium(const ModelParams& params) {
  Equilibrium eq;
  if (params.tan_theta() == 0.0) return eq;

  const FullModelCoefficients k;
  const double feedback = k.sediment_drag * (params.s() - 1.0);
  const double forcing = k.forcing * params.tan_theta();

  // U^2 (drag - feedback Cbar(U)) = forcing; Cbar depends on U only through
  // w_f/U and the feedback is a ~1e-3 relative correction, so plain
  // fixed-point iteration converges in a handful of sweeps.
  double U = uniform_speed_without_sediment(params.tan_theta());
  double Cbar = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    Cbar = std::max(0.0, equilibrium_concentration(params.c_ae(), params.w_f(), U));
    const double effective_drag = k.drag - feedback * Cbar;
    if (effective_drag <= 0.0)
      throw std::domain_error(
          "steady_equilibrium: sediment feedback exceeds bed drag");
    const double next = std::sqrt(forcing / effective_drag);
    const bool done = std::abs(next - U) <= 1e-15 * next;
    U = next;
    if (done) break;
  }
  Cbar = std::max(0.0, equilibrium_concentration(params.c_ae(), params.w_f(), U));
  eq.U = U;
  eq.V = 0.0;
  eq.Cbar = Cbar;
  eq.q = std::hypot(eq.U, eq.V);
  return eq;
}

}  // namespace sedflow
