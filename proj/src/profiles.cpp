#include "sedflow/profiles.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include <fmt/format.h>

namespace sedflow {

namespace {

// Horner evaluation, coefficients in ascending powers.
double poly(double Z, std::initializer_list<double> coeffs) {
  double acc = 0.0;
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) acc = acc * Z + *it;
  return acc;
}

void check_z(double Z, const char* who) {
  if (!(Z >= 0.0 && Z <= 1.0))
    throw std::domain_error(fmt::format("{}: Z = {} outside [0, 1]", who, Z));
}

void check_q(double q, const char* who) {
  if (!(q > 0.0)) throw std::domain_error(fmt::format("{}: q must be positive", who));
}

// Shared shapes.
double advection_shape(double Z) { return poly(Z, {-0.17, 0.449, -0.0392, -1.322}); }
double slope_shape(double Z) { return poly(Z, {0.918, -0.809, 2.549, 1.343}); }
double gravity_shape(double Z) {
  return poly(Z, {2.208, 1.204, -14.31, 8.069, -1.569, 0.954, 0.586, 0.119});
}

}  // namespace

double concentration_profile_steady(double Z, double cbar, double c_ae,
                                    double w_f, double q) {
  check_z(Z, "concentration_profile_steady");
  check_q(q, "concentration_profile_steady");
  const double r = w_f / q;
  const double r2 = w_f * w_f / q;
  return cbar * poly(Z, {0.985, 0.0422, -0.00756, -0.0139}) +
         cbar * r * poly(Z, {28.36, -5.156, -77.34}) +
         cbar * r2 * poly(Z, {-0.430, -0.430, 2.578, -0.859}) +
         c_ae * r * poly(Z, {56.72, -166.3, 77.34, 2.578}) +
         c_ae * r2 * poly(Z, {-0.430, 1.074, 0.0, -0.430});
}

double concentration_profile(double Z, const ProfileInputs& in,
                             const ModelParams& params) {
  check_z(Z, "concentration_profile");
  check_q(in.q, "concentration_profile");
  const double q = in.q;
  const double q3 = q * q * q;
  const double cbar = in.cbar;
  const double base =
      concentration_profile_steady(Z, cbar, params.c_ae(), params.w_f(), q);
  const double advection = in.h / q * (in.ubar * in.dc_dx + in.vbar * in.dc_dy) *
                           poly(Z, {2.578, 0.921, -17.68, 11.42});
  const double stretching_x = in.h * cbar / q * in.du_dx * advection_shape(Z);
  const double stretching_y =
      in.h * cbar / q * in.dv_dy * poly(Z, {-1.774, 1.244, 2.471, -1.486});
  const double depth_change =
      cbar / q * (in.ubar * in.dh_dx + in.vbar * in.dh_dy) * advection_shape(Z);
  // The bed-topography line appears twice in the printed expansion; it is
  // counted once, with its companion slope line below.
  const double topography =
      cbar / q3 * (in.ubar * in.db_dx + in.vbar * in.db_dy) * slope_shape(Z);
  const double slope = -params.tan_theta() * in.h * in.ubar * cbar / q3 * slope_shape(Z);
  return base + advection + stretching_x + stretching_y + depth_change + topography +
         slope;
}

double concentration_analytic(double Z, double c_ae, double w_f, double q) {
  check_q(q, "concentration_analytic");
  if (!(Z >= 0.0 && Z < 1.62))
    throw std::domain_error(
        fmt::format("concentration_analytic: Z = {} outside [0, 1.62)", Z));
  const double base = (5.29 + Z) / (3.26 * (1.62 - Z));
  return c_ae * std::pow(base, -197.45 * w_f / q);
}

double velocity_profile(double Z, const ProfileInputs& in, const ModelParams& params) {
  check_z(Z, "velocity_profile");
  check_q(in.q, "velocity_profile");
  const double q = in.q;
  const double h = in.h;
  const double mean_shape =
      in.ubar * poly(Z, {0.816, 0.445, -0.0916, -0.0307, -0.00383, -0.000418});
  const double gravity_term = params.tan_theta() * h / q * gravity_shape(Z);
  const double self_advection =
      h * in.ubar / q * in.du_dx *
      poly(Z, {2.326, 1.269, -13.52, 4.585, 0.894, 0.783, 0.533, 0.118, 0.0106});
  const double cross_advection =
      h * in.vbar / q * in.du_dy *
      poly(Z, {2.352, 1.283, -13.25, 3.622, 1.53, 0.708, 0.543, 0.129, 0.0127});
  const double free_surface = h / q * (in.dh_dx + in.db_dx) * -gravity_shape(Z);
  const double sediment = (params.s() - 1.0) * in.cbar * in.ubar *
                          poly(Z, {0.0167, 0.009, -0.107, 0.0439, 0.0173});
  return mean_shape + gravity_term + self_advection + cross_advection + free_surface +
         sediment;
}

double velocity_profile_steady(double Z, double tan_theta, double c_t) {
  check_z(Z, "velocity_profile_steady");
  if (tan_theta < 0.0)
    throw std::domain_error("velocity_profile_steady: slope must be >= 0");
  if (!(c_t > 0.0))
    throw std::domain_error("velocity_profile_steady: c_t must be positive");
  return std::sqrt(tan_theta / c_t) *
         poly(Z, {2.18, 1.19, -0.297, -0.0533, -0.0173, -0.00366, -0.00115, -0.000089});
}

double shear_stress_profile(double Z, double tan_theta) {
  check_z(Z, "shear_stress_profile");
  return tan_theta *
         poly(Z, {0.997, -0.999, 0.000284, -0.00995, 0.00776, 0.000791, 0.000072});
}

double eddy_diffusivity(double Z, double q, double tan_theta) {
  check_z(Z, "eddy_diffusivity");
  check_q(q, "eddy_diffusivity");
  return q * poly(Z, {0.00628, -0.00269, -0.000733}) +
         tan_theta / q * poly(Z, {0.00978, -0.2605, 0.247});
}

ProfileKind kind_of(ProfileOp op) {
  switch (op) {
    case ProfileOp::concentration:
    case ProfileOp::concentration_steady:
    case ProfileOp::concentration_analytic:
      return ProfileKind::concentration;
    case ProfileOp::velocity:
    case ProfileOp::velocity_steady:
      return ProfileKind::velocity;
    case ProfileOp::shear_stress:
      return ProfileKind::shear_stress;
    case ProfileOp::eddy_diffusivity:
      return ProfileKind::eddy_diffusivity;
  }
  throw std::logic_error("kind_of: unknown profile op");
}

VerticalProfile sample_profile(ProfileOp op, const ProfileInputs& in,
                               const ModelParams& params, int n) {
  if (n < 2) throw std::invalid_argument("sample_profile: need at least 2 samples");
  VerticalProfile out;
  out.kind = kind_of(op);
  out.zs.reserve(static_cast<std::size_t>(n));
  out.values.reserve(static_cast<std::size_t>(n));

  const bool settling_dependent = out.kind == ProfileKind::concentration;
  if (settling_dependent && in.q > 0.0 && params.w_f() / in.q > settling_ratio_warning)
    out.warnings.push_back(fmt::format(
        "settling ratio w_f/q = {:.4g} exceeds {}; concentration expansion may be "
        "inaccurate",
        params.w_f() / in.q, settling_ratio_warning));

  for (int k = 0; k < n; ++k) {
    // Endpoints exactly 0 and 1; interior nodes k/(n-1).
    const double Z = k == n - 1 ? 1.0 : static_cast<double>(k) / (n - 1);
    double value = 0.0;
    switch (op) {
      case ProfileOp::concentration:
        value = concentration_profile(Z, in, params);
        break;
      case ProfileOp::concentration_steady:
        value = concentration_profile_steady(Z, in.cbar, params.c_ae(), params.w_f(), in.q);
        break;
      case ProfileOp::concentration_analytic:
        value = concentration_analytic(Z, params.c_ae(), params.w_f(), in.q);
        break;
      case ProfileOp::velocity:
        value = velocity_profile(Z, in, params);
        break;
      case ProfileOp::velocity_steady:
        value = velocity_profile_steady(Z, params.tan_theta(), params.c_t());
        break;
      case ProfileOp::shear_stress:
        value = shear_stress_profile(Z, params.tan_theta());
        break;
      case ProfileOp::eddy_diffusivity:
        value = eddy_diffusivity(Z, in.q, params.tan_theta());
        break;
    }
    out.zs.push_back(Z);
    out.values.push_back(value);
  }
  return out;
}

}  // namespace sedflow
