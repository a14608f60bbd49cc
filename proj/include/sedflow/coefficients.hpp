#pragma once

namespace sedflow {

/// Coefficients of the comprehensive model evaluated at the physical
/// embedding. Values are the rounded ones from the slow-manifold expansion.
struct FullModelCoefficients {
  // momentum
  double drag = 0.00293;
  double forcing = 0.993;
  double self_advection = 1.025;
  double cross_advection = 1.017;
  double depth_gradient_u = 0.00817;
  double depth_gradient_v = 0.00809;
  double dispersion = 0.0941;
  double anisotropic_dispersion = 0.0839;
  double sediment_drag = 0.00257;
  double sediment_pressure = 0.298;
  // concentration
  double deposition = 0.938;
  double deposition_settling = 28.9;
  double entrainment = 0.984;
  double entrainment_settling = 51.3;
  double advection = 1.01;
  double advection_settling = 3.09;
  double c_dispersion = 0.0331;
  double c_anisotropic_dispersion = 0.0271;

  bool operator==(const FullModelCoefficients&) const = default;
};

/// Leading-order model; the momentum coefficients are shared with the
/// comprehensive model and the concentration advection is exponential in
/// the settling ratio.
struct LeadingModelCoefficients {
  double drag = 0.00293;
  double forcing = 0.993;
  double self_advection = 1.025;
  double cross_advection = 1.017;
  double sediment_pressure = 0.298;
  double deposition = 0.938;
  double entrainment = 0.984;
  double advection = 1.007;
  double advection_decay = 3.073;
};

/// Dispersion coefficient of the established depth-averaged
/// advection-diffusion model of suspended sediment.
inline constexpr double reference_model_dispersion = 0.13;

}  // namespace sedflow
