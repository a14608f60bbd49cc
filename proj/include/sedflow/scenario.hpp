#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sedflow/params.hpp"
#include "sedflow/solver.hpp"

namespace sedflow {

enum class BedKind { flat, ripple };
enum class InitialKind { equilibrium, uniform };

/// Scenario description read from a `section.key = value` file. Every
/// default reproduces the rippled-bed roll-wave experiment.
struct ScenarioConfig {
  struct Params {
    double tan_theta = 0.01;
    double s = ModelParams::default_s;
    double d = 6e-5;
    double c_d = ModelParams::default_c_D;
    double c_u = ModelParams::default_c_u;
    std::optional<double> c_t;  ///< unset: consistency value
    bool operator==(const Params&) const = default;
  } params;

  struct GridSpec {
    int nx = 512;
    int ny = 4;
    double lx = 100.0;
    double ly = 10.0;
    bool operator==(const GridSpec&) const = default;
  } grid;

  struct Bed {
    BedKind kind = BedKind::ripple;
    double height = 0.4;      ///< crest-to-trough
    double wavelength = 20.0;
    double crest_x = 60.0;    ///< x of one crest; a trough sits half a wavelength away
    bool operator==(const Bed&) const = default;
  } bed;

  struct Initial {
    InitialKind kind = InitialKind::equilibrium;
    double amplitude = 0.2;    ///< depth perturbation A sin(2 pi (x - shift) / Lx)
    double phase_shift = 0.0;
    // uniform initial data
    double h = 1.0;
    double ubar = 0.0;
    double vbar = 0.0;
    double cbar = 0.0;
    bool operator==(const Initial&) const = default;
  } initial;

  struct ModelSpec {
    Model rhs = Model::full;
    double t_end = 180.0;
    double cfl = 0.25;
    double eps_q = 1e-8;
    double h_min = 1e-6;
    std::optional<bool> artificial_diffusion;  ///< unset: model default
    bool operator==(const ModelSpec&) const = default;
  } model;

  struct Output {
    std::string dir = "out";
    std::vector<double> probes{50.0, 60.0};
    std::vector<double> snapshots{180.0};
    double probe_interval = 0.1;
    int profile_samples = 101;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parse or validation failure; `line` is 0 for validation errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& config);

/// Every key, one per line, with round-trip precision.
std::string serialize_config(const ScenarioConfig& config);

ModelParams make_params(const ScenarioConfig& config);
Grid make_grid(const ScenarioConfig& config);
SolverOptions make_solver_options(const ScenarioConfig& config);

/// Zero-mean sinusoidal ripples b = (height/2) cos(2 pi (x - crest_x) / wavelength),
/// uniform in y. The wavelength must divide Lx.
Field build_ripple_bed(const Grid& grid, double height, double wavelength,
                       double crest_x = 60.0);

FlowState build_initial_state(const ScenarioConfig& config, const ModelParams& params);

/// q / sqrt(g h) pointwise.
Field froude(const FlowState& state);

struct ProbeSeries {
  double x_location = 0.0;
  std::vector<double> times;
  std::vector<double> h;
  std::vector<double> ubar;
  std::vector<double> cbar;
};

/// Linear interpolation along x on the first grid row.
double sample_at_x(const Field& f, const Grid& grid, double x);

struct ScenarioResult {
  FlowState initial;
  FlowState final_state;
  RunStats stats;
  std::vector<ProbeSeries> probes;
  std::vector<FlowState> snapshots;
  double mass_drift = 0.0;  ///< relative change of the total volume
  double wall_seconds = 0.0;
};

/// Runs the scenario. When `out_dir` is set, probe, snapshot, profile and
/// summary files are written there; on solver failure the outputs gathered
/// so far are flushed before the error propagates.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_dir);

/// Writes the CSV tables behind the profile and spectrum figures.
/// `which` is one of concentration_profiles, velocity_profile,
/// shear_profile, spectrum, or all. Returns the files written.
std::vector<std::filesystem::path> emit_figure_data(const std::string& which,
                                                    const ModelParams& params,
                                                    const std::filesystem::path& dir);

/// Particle sizes of the concentration profile figure.
inline const std::vector<double> figure_particle_sizes{0.6e-4, 1e-4, 1.5e-4};

}  // namespace sedflow
