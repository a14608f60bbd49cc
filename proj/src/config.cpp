#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "sedflow/scenario.hpp"

namespace sedflow {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, text));
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  return value;
}

std::optional<bool> parse_tristate(const std::string& key, const std::string& text) {
  if (text == "auto") return std::nullopt;
  if (text == "true" || text == "on" || text == "1") return true;
  if (text == "false" || text == "off" || text == "0") return false;
  throw ConfigError(fmt::format("{}: expected true, false or auto, got '{}'", key, text));
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += format_double(values[k]);
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key,
                                  const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["params.tan_theta"] = [](auto& c, auto& k, auto& v) { c.params.tan_theta = parse_double(k, v); };
    t["params.s"] = [](auto& c, auto& k, auto& v) { c.params.s = parse_double(k, v); };
    t["params.d"] = [](auto& c, auto& k, auto& v) { c.params.d = parse_double(k, v); };
    t["params.c_d"] = [](auto& c, auto& k, auto& v) { c.params.c_d = parse_double(k, v); };
    t["params.c_u"] = [](auto& c, auto& k, auto& v) { c.params.c_u = parse_double(k, v); };
    t["params.c_t"] = [](auto& c, auto& k, auto& v) {
      if (v == "auto") c.params.c_t.reset();
      else c.params.c_t = parse_double(k, v);
    };
    t["grid.nx"] = [](auto& c, auto& k, auto& v) { c.grid.nx = parse_int(k, v); };
    t["grid.ny"] = [](auto& c, auto& k, auto& v) { c.grid.ny = parse_int(k, v); };
    t["grid.lx"] = [](auto& c, auto& k, auto& v) { c.grid.lx = parse_double(k, v); };
    t["grid.ly"] = [](auto& c, auto& k, auto& v) { c.grid.ly = parse_double(k, v); };
    t["bed.kind"] = [](auto& c, auto& k, auto& v) {
      if (v == "flat") c.bed.kind = BedKind::flat;
      else if (v == "ripple") c.bed.kind = BedKind::ripple;
      else throw ConfigError(fmt::format("{}: expected flat or ripple, got '{}'", k, v));
    };
    t["bed.height"] = [](auto& c, auto& k, auto& v) { c.bed.height = parse_double(k, v); };
    t["bed.wavelength"] = [](auto& c, auto& k, auto& v) { c.bed.wavelength = parse_double(k, v); };
    t["bed.crest_x"] = [](auto& c, auto& k, auto& v) { c.bed.crest_x = parse_double(k, v); };
    t["initial.kind"] = [](auto& c, auto& k, auto& v) {
      if (v == "equilibrium") c.initial.kind = InitialKind::equilibrium;
      else if (v == "uniform") c.initial.kind = InitialKind::uniform;
      else throw ConfigError(fmt::format("{}: expected equilibrium or uniform, got '{}'", k, v));
    };
    t["initial.amplitude"] = [](auto& c, auto& k, auto& v) { c.initial.amplitude = parse_double(k, v); };
    t["initial.phase_shift"] = [](auto& c, auto& k, auto& v) { c.initial.phase_shift = parse_double(k, v); };
    t["initial.h"] = [](auto& c, auto& k, auto& v) { c.initial.h = parse_double(k, v); };
    t["initial.ubar"] = [](auto& c, auto& k, auto& v) { c.initial.ubar = parse_double(k, v); };
    t["initial.vbar"] = [](auto& c, auto& k, auto& v) { c.initial.vbar = parse_double(k, v); };
    t["initial.cbar"] = [](auto& c, auto& k, auto& v) { c.initial.cbar = parse_double(k, v); };
    t["model.rhs"] = [](auto& c, auto& k, auto& v) {
      const auto m = model_from_string(v);
      if (!m) throw ConfigError(fmt::format("{}: expected leading, full or reference, got '{}'", k, v));
      c.model.rhs = *m;
    };
    t["model.t_end"] = [](auto& c, auto& k, auto& v) { c.model.t_end = parse_double(k, v); };
    t["model.cfl"] = [](auto& c, auto& k, auto& v) { c.model.cfl = parse_double(k, v); };
    t["model.eps_q"] = [](auto& c, auto& k, auto& v) { c.model.eps_q = parse_double(k, v); };
    t["model.h_min"] = [](auto& c, auto& k, auto& v) { c.model.h_min = parse_double(k, v); };
    t["model.artificial_diffusion"] = [](auto& c, auto& k, auto& v) {
      c.model.artificial_diffusion = parse_tristate(k, v);
    };
    t["output.dir"] = [](auto& c, auto&, auto& v) { c.output.dir = v; };
    t["output.probes"] = [](auto& c, auto& k, auto& v) { c.output.probes = parse_list(k, v); };
    t["output.snapshots"] = [](auto& c, auto& k, auto& v) { c.output.snapshots = parse_list(k, v); };
    t["output.probe_interval"] = [](auto& c, auto& k, auto& v) { c.output.probe_interval = parse_double(k, v); };
    t["output.profile_samples"] = [](auto& c, auto& k, auto& v) { c.output.profile_samples = parse_int(k, v); };
    return t;
  }();
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("line {}: expected 'section.key = value'", line_no),
                        line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key), line_no);
    try {
      it->second(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line_no, e.what()), line_no);
    }
  }
  validate(config);
  return config;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate(const ScenarioConfig& c) {
  require(c.params.tan_theta >= 0.0, "params.tan_theta must be >= 0");
  require(c.params.s > 1.0, "params.s must exceed 1");
  require(c.params.d > 0.0 && c.params.d < 4.0, "params.d must lie in (0, 4)");
  require(c.params.c_d > 0.0, "params.c_d must be positive");
  require(c.params.c_u > 0.0, "params.c_u must be positive");
  require(!c.params.c_t || *c.params.c_t > 0.0, "params.c_t must be positive");
  require(c.grid.nx >= 1, "grid.nx must be >= 1");
  require(c.grid.ny >= 1, "grid.ny must be >= 1");
  require(c.grid.lx > 0.0, "grid.lx must be positive");
  require(c.grid.ly > 0.0, "grid.ly must be positive");
  require(c.bed.height >= 0.0, "bed.height must be >= 0");
  require(c.bed.wavelength > 0.0, "bed.wavelength must be positive");
  if (c.bed.kind == BedKind::ripple) {
    const double periods = c.grid.lx / c.bed.wavelength;
    require(std::abs(periods - std::round(periods)) < 1e-9 * std::max(1.0, periods),
            "bed.wavelength must divide grid.lx");
  }
  require(std::abs(c.initial.amplitude) < 1.0, "initial.amplitude must lie in (-1, 1)");
  require(c.initial.h > 0.0, "initial.h must be positive");
  require(c.initial.cbar >= 0.0, "initial.cbar must be >= 0");
  require(c.model.t_end > 0.0, "model.t_end must be positive");
  require(c.model.cfl > 0.0 && c.model.cfl <= 1.0, "model.cfl must lie in (0, 1]");
  require(c.model.eps_q > 0.0, "model.eps_q must be positive");
  require(c.model.h_min > 0.0, "model.h_min must be positive");
  for (double x : c.output.probes)
    require(x >= 0.0 && x < c.grid.lx, "output.probes must lie in [0, grid.lx)");
  for (double t : c.output.snapshots)
    require(t >= 0.0 && t <= c.model.t_end, "output.snapshots must lie in [0, model.t_end]");
  require(c.output.probe_interval > 0.0, "output.probe_interval must be positive");
  require(c.output.profile_samples >= 2, "output.profile_samples must be >= 2");
  require(!c.output.dir.empty(), "output.dir must not be empty");
}

std::string serialize_config(const ScenarioConfig& c) {
  std::string out;
  const auto line = [&out](const char* key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("auto");
  };
  line("params.tan_theta", format_double(c.params.tan_theta));
  line("params.s", format_double(c.params.s));
  line("params.d", format_double(c.params.d));
  line("params.c_d", format_double(c.params.c_d));
  line("params.c_u", format_double(c.params.c_u));
  line("params.c_t", opt(c.params.c_t));
  line("grid.nx", std::to_string(c.grid.nx));
  line("grid.ny", std::to_string(c.grid.ny));
  line("grid.lx", format_double(c.grid.lx));
  line("grid.ly", format_double(c.grid.ly));
  line("bed.kind", c.bed.kind == BedKind::flat ? "flat" : "ripple");
  line("bed.height", format_double(c.bed.height));
  line("bed.wavelength", format_double(c.bed.wavelength));
  line("bed.crest_x", format_double(c.bed.crest_x));
  line("initial.kind", c.initial.kind == InitialKind::equilibrium ? "equilibrium" : "uniform");
  line("initial.amplitude", format_double(c.initial.amplitude));
  line("initial.phase_shift", format_double(c.initial.phase_shift));
  line("initial.h", format_double(c.initial.h));
  line("initial.ubar", format_double(c.initial.ubar));
  line("initial.vbar", format_double(c.initial.vbar));
  line("initial.cbar", format_double(c.initial.cbar));
  line("model.rhs", to_string(c.model.rhs));
  line("model.t_end", format_double(c.model.t_end));
  line("model.cfl", format_double(c.model.cfl));
  line("model.eps_q", format_double(c.model.eps_q));
  line("model.h_min", format_double(c.model.h_min));
  line("model.artificial_diffusion",
       c.model.artificial_diffusion ? (*c.model.artificial_diffusion ? "true" : "false")
                                    : "auto");
  line("output.dir", c.output.dir);
  line("output.probes", format_list(c.output.probes));
  line("output.snapshots", format_list(c.output.snapshots));
  line("output.probe_interval", format_double(c.output.probe_interval));
  line("output.profile_samples", std::to_string(c.output.profile_samples));
  return out;
}

}  // namespace sedflow
