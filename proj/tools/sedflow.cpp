// Command-line driver: scenario runs, figure tables, spectrum and
// equilibrium diagnostics, and the invariant self-check.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sedflow/checks.hpp"
#include "sedflow/params.hpp"
#include "sedflow/scenario.hpp"
#include "sedflow/spectrum.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_solver = 2;

int cmd_run(const std::string& config_path, const std::string& out_override) {
  sedflow::ScenarioConfig config = sedflow::parse_config(config_path);
  const std::filesystem::path out = out_override.empty() ? config.output.dir : out_override;
  const sedflow::ScenarioResult r = sedflow::run_scenario(config, out);
  const sedflow::Field fr = sedflow::froude(r.final_state);
  fmt::print("t = {:g}: {} steps, {} clamped cells, mass drift {:.3g}, max Froude {:.4f}, "
             "{:.2f} s\n",
             r.final_state.t, r.stats.steps, r.stats.clamped_cells, r.mass_drift, fr.max(),
             r.wall_seconds);
  fmt::print("outputs in {}\n", out.string());
  return exit_ok;
}

int cmd_figures(const std::string& which, const std::string& out, double tan_theta) {
  const sedflow::ModelParams params(tan_theta, sedflow::ModelParams::default_s, 6e-5);
  for (const auto& path : sedflow::emit_figure_data(which, params, out))
    fmt::print("{}\n", path.string());
  return exit_ok;
}

int cmd_spectrum(int n, double tan_theta, double c_u, double h) {
  const sedflow::ModelParams params(tan_theta, sedflow::ModelParams::default_s, 6e-5,
                                    sedflow::ModelParams::default_c_D, c_u);
  const sedflow::Equilibrium eq = sedflow::steady_equilibrium(params);
  const double q = eq.q > 0.0 ? eq.q : 1.0;
  const double nu = sedflow::equilibrium_eddy_viscosity(params.c_t(), h, q, c_u);
  fmt::print("# nu = {:.17g}, gap nu*pi^2 = {:.17g}\n", nu,
             sedflow::SpectrumResult{{}, {}, nu}.gap());
  fmt::print("family,index,k,lambda\n");
  const auto table = [&](const char* family, const std::vector<double>& ks) {
    const auto lambdas = sedflow::decay_rates(nu, ks);
    for (std::size_t m = 0; m < ks.size(); ++m)
      fmt::print("{},{},{:.17g},{:.17g}\n", family, m + 1, ks[m], lambdas[m]);
  };
  table("velocity", sedflow::velocity_wavenumbers(c_u, n));
  table("concentration", sedflow::concentration_wavenumbers(h, n));
  return exit_ok;
}

int cmd_equilibrium(double tan_theta, double d) {
  const sedflow::ModelParams p(tan_theta, sedflow::ModelParams::default_s, d);
  const sedflow::Equilibrium eq = sedflow::steady_equilibrium(p);
  fmt::print("tan_theta = {:.17g}\n", p.tan_theta());
  fmt::print("s = {:.17g}\nd = {:.17g}\nc_D = {:.17g}\nc_u = {:.17g}\nc_t = {:.17g}\n", p.s(),
             p.d(), p.c_D(), p.c_u(), p.c_t());
  fmt::print("w_f = {:.17g}\nc_ae = {:.17g}\n", p.w_f(), p.c_ae());
  fmt::print("U = {:.17g}\nV = {:.17g}\nCbar = {:.17g}\nq = {:.17g}\n", eq.U, eq.V, eq.Cbar,
             eq.q);
  if (p.tan_theta() > 0.0)
    fmt::print("U/sqrt(tan_theta) = {:.17g}\n", eq.U / std::sqrt(p.tan_theta()));
  return exit_ok;
}

int cmd_check() {
  bool all = true;
  for (const auto& r : sedflow::run_invariant_checks()) {
    fmt::print("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    all = all && r.passed;
  }
  return all ? exit_ok : exit_solver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth-averaged suspended sediment transport in turbulent shallow flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario from a config file");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.dir)");

  std::string which;
  std::string fig_out = "figures";
  double fig_tan = 0.01;
  auto* figures = app.add_subcommand("figures", "Write profile/spectrum figure tables");
  figures->add_option("which", which,
                      "concentration_profiles | velocity_profile | shear_profile | "
                      "spectrum | all")
      ->required();
  figures->add_option("--out", fig_out, "Output directory");
  figures->add_option("--tan-theta", fig_tan, "Mean bed slope");

  int n_modes = 5;
  double spec_tan = 0.01;
  double spec_cu = sedflow::ModelParams::default_c_u;
  double spec_h = 1.0;
  auto* spectrum = app.add_subcommand("spectrum", "Print vertical-mode wavenumbers and decay rates");
  spectrum->add_option("--n", n_modes, "Modes per family")->check(CLI::PositiveNumber);
  spectrum->add_option("--tan-theta", spec_tan, "Mean bed slope (sets the equilibrium speed)");
  spectrum->add_option("--c-u", spec_cu, "Bed slip constant");
  spectrum->add_option("--depth", spec_h, "Depth in the concentration relation");

  double eq_tan = 0.01;
  double eq_d = 6e-5;
  auto* equilibrium = app.add_subcommand("equilibrium", "Print constants and the uniform fixed point");
  equilibrium->add_option("--tan-theta", eq_tan, "Mean bed slope");
  equilibrium->add_option("--d", eq_d, "Nondimensional particle size");

  auto* check = app.add_subcommand("check", "Run the invariant self-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*figures) return cmd_figures(which, fig_out, fig_tan);
    if (*spectrum) return cmd_spectrum(n_modes, spec_tan, spec_cu, spec_h);
    if (*equilibrium) return cmd_equilibrium(eq_tan, eq_d);
    if (*check) return cmd_check();
  } catch (const sedflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const sedflow::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_solver;
  }
  return exit_ok;
}
