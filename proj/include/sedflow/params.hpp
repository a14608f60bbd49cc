#pragma once

#include <cmath>

namespace sedflow {

/// Nondimensional gravity magnitude; lengths scale with the mean depth and
/// velocities with the long-wave speed, so it is identically one.
inline constexpr double gravity = 1.0;

/// Settling speed of a sphere of diameter d: sqrt(4 (s-1) g d / (3 c_D)).
/// Throws std::domain_error unless s > 1 and g, d, c_D > 0.
double falling_velocity(double s, double g, double d, double c_D);

/// Equilibrium near-bed reference concentration
///   3.26 tan^1.5 / (d^0.8 (1.39 - ln d)^3)
/// with the natural logarithm. Valid for tan_theta >= 0 and 0 < d < 4.
double reference_concentration(double tan_theta, double d);

/// Depth average of the steady velocity profile polynomial (before the
/// sqrt(tan/c_t) scaling).
double steady_velocity_polynomial_mean();

/// Smagorinski constant that makes the steady velocity profile average to
/// 18.7 sqrt(tan_theta), i.e. (P/18.7)^2 with P the polynomial mean.
double smagorinski_constant_consistency();

/// Physical and closure constants of the model. Derived quantities are
/// evaluated once on construction; the object is immutable afterwards.
class ModelParams {
 public:
  static constexpr double default_s = 2.65;
  static constexpr double default_c_D = 1.4;
  static constexpr double default_c_u = 1.85;

  ModelParams(double tan_theta, double s, double d, double c_D = default_c_D,
              double c_u = default_c_u);
  ModelParams(double tan_theta, double s, double d, double c_D, double c_u,
              double c_t);

  double tan_theta() const { return tan_theta_; }
  double s() const { return s_; }
  double d() const { return d_; }
  double c_D() const { return c_D_; }
  double c_u() const { return c_u_; }
  double c_t() const { return c_t_; }
  double g() const { return gravity; }
  double w_f() const { return w_f_; }
  double c_ae() const { return c_ae_; }

  /// Same constants with a different slope (derived fields recomputed).
  ModelParams with_tan_theta(double tan_theta) const;

  bool operator==(const ModelParams&) const = default;

 private:
  double tan_theta_;
  double s_;
  double d_;
  double c_D_;
  double c_u_;
  double c_t_;
  double w_f_;
  double c_ae_;
};

/// Uniform flat-bed fixed point of the comprehensive model.
struct Equilibrium {
  double U = 0.0;
  double V = 0.0;
  double Cbar = 0.0;
  double q = 0.0;
};

/// Depth-averaged concentration that zeroes the erosion/deposition source at
/// flow speed q: c_ae (0.984 - 51.3 w_f/q) / (0.938 + 28.9 w_f/q).
double equilibrium_concentration(double c_ae, double w_f, double q);

/// Uniform speed balancing bed drag against gravity with no sediment
/// feedback: sqrt(0.993 tan / 0.00293), about 18.41 sqrt(tan).
double uniform_speed_without_sediment(double tan_theta);

/// Solves drag = forcing + sediment feedback together with the zero of the
/// concentration source terms, so that the comprehensive tendency vanishes
/// at (h=1, U, 0, Cbar) on a flat bed. Cbar is clamped at zero when the
/// settling ratio w_f/q is too large for entrainment to balance deposition.
Equilibrium steady_equilibrium(const ModelParams& params);

/// Mean speed 18.7 sqrt(tan) used by the steady profile reconstructions.
inline double steady_profile_speed(double tan_theta) {
  return 18.7 * std::sqrt(tan_theta);
}

}  // namespace sedflow
