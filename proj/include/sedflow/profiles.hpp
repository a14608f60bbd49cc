#pragma once

#include <string>
#include <vector>

#include "sedflow/params.hpp"

namespace sedflow {

/// Local depth-averaged state and lateral gradients at one horizontal
/// location, used to reconstruct the vertical structure there.
struct ProfileInputs {
  double h = 1.0;
  double ubar = 0.0;
  double vbar = 0.0;
  double cbar = 0.0;
  double q = 1.0;  ///< mean speed, must be positive
  double dc_dx = 0.0;
  double dc_dy = 0.0;
  double du_dx = 0.0;
  double du_dy = 0.0;
  double dv_dy = 0.0;
  double dh_dx = 0.0;
  double dh_dy = 0.0;
  double db_dx = 0.0;
  double db_dy = 0.0;
};

/// Settling ratio w_f/q above which the concentration expansion is outside
/// the range it was constructed for.
inline constexpr double settling_ratio_warning = 0.02;

/// Out-of-equilibrium concentration c(Z): base distribution, settling
/// corrections, advection, topography and slope contributions.
/// Throws std::domain_error for Z outside [0, 1] or q <= 0.
double concentration_profile(double Z, const ProfileInputs& in,
                             const ModelParams& params);

/// c(Z) in steady uniform flow.
double concentration_profile_steady(double Z, double cbar, double c_ae,
                                    double w_f, double q);

/// Closed-form steady approximation
/// c_ae [(5.29 + Z) / (3.26 (1.62 - Z))]^(-197.45 w_f / q), for 0 <= Z < 1.62.
double concentration_analytic(double Z, double c_ae, double w_f, double q);

/// Lateral velocity u(Z) on the slow manifold.
double velocity_profile(double Z, const ProfileInputs& in, const ModelParams& params);

/// u(Z) in steady uniform flow: sqrt(tan/c_t) times a degree-7 polynomial.
double velocity_profile_steady(double Z, double tan_theta, double c_t);

/// Shear stress tau_xz(Z) in steady uniform flow.
double shear_stress_profile(double Z, double tan_theta);

/// Eddy diffusivity of sediment in steady uniform flow.
double eddy_diffusivity(double Z, double q, double tan_theta);

enum class ProfileKind { concentration, velocity, shear_stress, eddy_diffusivity };

struct VerticalProfile {
  ProfileKind kind = ProfileKind::concentration;
  std::vector<double> zs;
  std::vector<double> values;
  std::vector<std::string> warnings;
};

/// Which reconstruction sample_profile evaluates.
enum class ProfileOp {
  concentration,
  concentration_steady,
  concentration_analytic,
  velocity,
  velocity_steady,
  shear_stress,
  eddy_diffusivity,
};

ProfileKind kind_of(ProfileOp op);

/// Evaluates `op` at n >= 2 uniformly spaced Z in [0, 1]. Steady variants
/// read ubar/cbar/q from `in` and the slope, w_f, c_ae, c_t from `params`.
VerticalProfile sample_profile(ProfileOp op, const ProfileInputs& in,
                               const ModelParams& params, int n);

}  // namespace sedflow
