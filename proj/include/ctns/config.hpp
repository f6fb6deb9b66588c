#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctns/model.hpp"
#include "ctns/monitor.hpp"

namespace ctns {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InitialConditionSpec {
  std::string preset = "zero";  // zero | single_mode | taylor_green | random_smooth |
                                // near_homogeneous_bacteria
  double amplitude = 0.01;
  std::uint64_t seed = 12345;
  double k0 = 3.0;              // spectral decay scale of random_smooth
  std::string snapshot_prefix;  // when set, load a checkpoint instead of a preset
};

struct RunConfig {
  int dim = 2;
  int n = 32;
  std::optional<double> chi;                  // default 1.0
  std::optional<std::vector<double>> grav;    // default (0,..,-1)
  double dt = 1e-3;
  double t_end = 1.0;
  double cfl_warn = 0.5;
  MonitorConfig monitor;
  long cadence = 1;  // diagnostics every this many steps
  InitialConditionSpec ic;
  std::string output_dir = "out";
  long checkpoint_every_steps = 0;  // 0 = only at the end
  bool debug_disable_dealias = false;
  std::vector<std::string> warnings;  // collected during parsing

  ModelParams model_params() const {
    ModelParams p = ModelParams::defaults(dim);
    if (chi) p.chi = *chi;
    if (grav) {
      if (static_cast<int>(grav->size()) != dim)
        throw config_error("model.grav needs " + std::to_string(dim) + " components");
      for (int d = 0; d < dim; ++d) p.grav[d] = (*grav)[d];
    }
    if (!std::isfinite(p.chi)) throw config_error("model.chi must be finite");
    for (int d = 0; d < dim; ++d)
      if (!std::isfinite(p.grav[d])) throw config_error("model.grav must be finite");
    return p;
  }

  void validate() {
    if (dim != 2 && dim != 3) throw config_error("grid.dim must be 2 or 3");
    if (n < 8 || (n & (n - 1)) != 0) throw config_error("grid.n must be a power of two >= 8");
    if (!(dt > 0.0)) throw config_error("integrator.dt must be positive");
    if (!(t_end >= 0.0)) throw config_error("integrator.t_end must be >= 0");
    if (cadence < 1) throw config_error("monitor.cadence must be >= 1");
    if (checkpoint_every_steps < 0) throw config_error("output.checkpoint_every_steps must be >= 0");
    try {
      monitor.validate();
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
    model_params();  // grav length check
    for (const auto& w : monitor.range_warnings()) warnings.push_back(w);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t\r\n");
  return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error("bad numeric value for " + key + ": '" + v + "'");
  }
}

inline long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error("bad integer value for " + key + ": '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error("bad boolean value for " + key + ": '" + v + "'");
}

inline std::vector<double> parse_vector(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(parse_double(key, trim(tok)));
  return out;
}

}  // namespace detail

/// Apply one "section.key = value" assignment; bare keys are accepted where
/// unambiguous. Unknown keys are errors.
inline void apply_config_key(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = detail::trim(raw_key);
  const std::string v = detail::trim(value);
  using namespace detail;

  if (key == "grid.dim" || key == "dim") cfg.dim = static_cast<int>(parse_long(key, v));
  else if (key == "grid.n" || key == "n") cfg.n = static_cast<int>(parse_long(key, v));
  else if (key == "model.chi" || key == "chi") cfg.chi = parse_double(key, v);
  else if (key == "model.grav" || key == "grav") cfg.grav = parse_vector(key, v);
  else if (key == "integrator.dt" || key == "dt") cfg.dt = parse_double(key, v);
  else if (key == "integrator.t_end" || key == "t_end") cfg.t_end = parse_double(key, v);
  else if (key == "integrator.cfl_warn" || key == "cfl_warn") cfg.cfl_warn = parse_double(key, v);
  else if (key == "monitor.C0" || key == "C0") cfg.monitor.C0 = parse_double(key, v);
  else if (key == "monitor.r" || key == "r") cfg.monitor.r = parse_double(key, v);
  else if (key == "monitor.s" || key == "s") cfg.monitor.s = parse_double(key, v);
  else if (key == "monitor.eps" || key == "eps") cfg.monitor.eps = parse_double(key, v);
  else if (key == "monitor.cadence" || key == "cadence") cfg.cadence = parse_long(key, v);
  else if (key == "ic.preset" || key == "preset") cfg.ic.preset = v;
  else if (key == "ic.amplitude" || key == "amplitude") cfg.ic.amplitude = parse_double(key, v);
  else if (key == "ic.seed" || key == "seed")
    cfg.ic.seed = static_cast<std::uint64_t>(parse_long(key, v));
  else if (key == "ic.k0" || key == "k0") cfg.ic.k0 = parse_double(key, v);
  else if (key == "ic.snapshot" || key == "snapshot") cfg.ic.snapshot_prefix = v;
  else if (key == "output.dir" || key == "output_dir") cfg.output_dir = v;
  else if (key == "output.checkpoint_every_steps" || key == "checkpoint_every_steps")
    cfg.checkpoint_every_steps = parse_long(key, v);
  else if (key == "debug.disable_dealias")
    cfg.debug_disable_dealias = parse_bool(key, v);
  else
    throw config_error("unknown config key: " + key);
}

/// Flat key-value run configuration with dotted section prefixes; '#' starts
/// a comment. Defaults fill everything a file leaves out; validation turns
/// paper-range violations into warnings, everything else into errors.
inline RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("config file not found: " + path);
  RunConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_config_key(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

}  // namespace ctns
