#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sedflow/coefficients.hpp"
#include "sedflow/grid.hpp"
#include "sedflow/params.hpp"

namespace sedflow {

struct FlowState {
  Grid grid;
  double t = 0.0;
  Field h;
  Field ubar;
  Field vbar;
  Field cbar;
  Field b;

  FlowState() = default;
  /// All fields constant; flat bed.
  FlowState(const Grid& grid, double h0, double u0, double v0, double c0);

  /// Throws std::invalid_argument if any field does not match the grid.
  void check_shapes() const;

  /// State on the transposed grid with the roles of ubar and vbar swapped.
  FlowState transposed() const;

  bool operator==(const FlowState&) const = default;
};

struct Tendency {
  Field dh;
  Field du;
  Field dv;
  Field dc;

  Tendency() = default;
  explicit Tendency(const Grid& grid)
      : dh(grid), du(grid), dv(grid), dc(grid) {}
};

enum class Model { leading, full, reference };

const char* to_string(Model model);
std::optional<Model> model_from_string(const std::string& name);

enum class Axis { x, y };

struct SolverOptions {
  Model model = Model::full;
  /// Regularisation in q = sqrt(u^2 + v^2 + eps_q^2).
  double eps_q = 1e-8;
  double h_min = 1e-6;
  double cfl = 0.25;
  /// Constant artificial diffusion 0.01 dx max|char speed| on u, v, c.
  /// Unset means "on for the leading model only".
  std::optional<bool> artificial_diffusion;
  /// Direction of the mean downslope forcing tan_theta.
  Axis forcing_axis = Axis::x;
  FullModelCoefficients full;
  LeadingModelCoefficients leading;

  bool use_artificial_diffusion() const {
    return artificial_diffusion.value_or(model == Model::leading);
  }
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { nonpositive_depth, non_finite_field };

  SolverError(Kind kind, double time, const std::string& what);

  Kind kind() const { return kind_; }
  double time() const { return time_; }

 private:
  Kind kind_;
  double time_;
};

/// sqrt(u^2 + v^2 + eps_q^2) pointwise.
Field regularized_speed(const Field& ubar, const Field& vbar, double eps_q = 1e-8);

/// Right-hand side of the leading-order model.
Tendency tendency_leading(const FlowState& state, const ModelParams& params,
                          const SolverOptions& options = {});

/// Right-hand side of the comprehensive model.
Tendency tendency_full(const FlowState& state, const ModelParams& params,
                       const SolverOptions& options = {});

/// Established depth-averaged advection-diffusion model; only dc is filled,
/// the other tendencies are zero.
Tendency tendency_reference(const FlowState& state, const ModelParams& params,
                            const SolverOptions& options = {});

/// Dispatches on options.model. The reference model evolves the flow with
/// the comprehensive momentum equations and the concentration with the
/// established advection-diffusion equation.
Tendency evaluate_tendency(const FlowState& state, const ModelParams& params,
                           const SolverOptions& options);

/// Classical four-stage Runge-Kutta step. Concentration is clamped at zero
/// afterwards; the number of clamped cells is added to *clamped if given.
FlowState step_rk4(const FlowState& state, const ModelParams& params, double dt,
                   const SolverOptions& options, std::size_t* clamped = nullptr);

/// Stable explicit step from the gravity-wave and dispersion limits.
double cfl_dt(const FlowState& state, const ModelParams& params,
              const SolverOptions& options);

struct RunHooks {
  /// Times at which a step is truncated to land exactly; on_stop fires there.
  std::vector<double> stop_times;
  std::function<void(const FlowState&)> on_stop;
  /// Called after every step (and once for the initial state). Does not
  /// influence the step sequence.
  std::function<void(const FlowState&)> on_step;
};

struct RunStats {
  std::size_t steps = 0;
  std::size_t clamped_cells = 0;
};

/// Integrates to t_end with CFL-limited RK4 steps; the final step is
/// shortened to land on t_end.
FlowState run(const FlowState& initial, const ModelParams& params,
              const SolverOptions& options, double t_end,
              const RunHooks& hooks = {}, RunStats* stats = nullptr);

}  // namespace sedflow
