#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctns/ctns.hpp"

namespace {

/// Flags of the form --section.key=value mirror config keys verbatim.
void apply_extras(ctns::RunConfig& cfg, const std::vector<std::string>& extras) {
  for (const auto& raw : extras) {
    std::string s = raw;
    if (s.rfind("--", 0) == 0) s = s.substr(2);
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ctns::config_error("override must look like --section.key=value: " + raw);
    ctns::apply_config_key(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int do_run(const std::string& config_path, const std::vector<std::string>& extras) {
  ctns::RunConfig cfg;
  if (!config_path.empty()) cfg = ctns::parse_config(config_path);
  apply_extras(cfg, extras);
  cfg.validate();
  const ctns::ExitReport rep = ctns::run_simulation(cfg);
  print_warnings(rep.warnings);
  std::cout << "status = " << (rep.status == ctns::RunStatus::completed ? "completed" : "blow_up")
            << "\n";
  std::cout << "final_time = " << rep.final_time << "\n";
  std::cout << "csv = " << rep.csv_path << "\n";
  std::cout << "summary = " << rep.summary_path << "\n";
  std::cout << "checkpoint = " << rep.checkpoint_prefix << "\n";
  return rep.exit_code;
}

int do_resume(const std::string& checkpoint, double t_end,
              const std::vector<std::string>& extras) {
  ctns::RunConfig cfg;
  apply_extras(cfg, extras);
  const ctns::ExitReport rep = ctns::resume_simulation(checkpoint, t_end, cfg);
  print_warnings(rep.warnings);
  std::cout << "status = " << (rep.status == ctns::RunStatus::completed ? "completed" : "blow_up")
            << "\n";
  std::cout << "final_time = " << rep.final_time << "\n";
  std::cout << "csv = " << rep.csv_path << "\n";
  std::cout << "summary = " << rep.summary_path << "\n";
  return rep.exit_code;
}

int do_verify(int dim, int n, std::uint64_t seed, bool break_dealias) {
  ctns::VerifyOptions opt;
  opt.dim = dim;
  opt.n = n;
  opt.seed = seed;
  opt.break_dealias = break_dealias;
  const auto results = ctns::verify_suite(opt);
  ctns::print_verify_report(std::cout, results);
  return ctns::all_passed(results) ? ctns::exit_ok : ctns::exit_property_failure;
}

int do_inspect(const std::string& path, double r) {
  ctns::inspect_snapshot(path, std::cout, r);
  return ctns::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral chemotaxis-Navier-Stokes simulator with Littlewood-Paley "
               "regularity diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a simulation from a config file");
  run_cmd->add_option("--config", config_path, "flat key-value config file");
  run_cmd->allow_extras();

  std::string checkpoint;
  double resume_t_end = 0.0;
  auto* resume_cmd = app.add_subcommand("resume", "continue from a checkpoint");
  resume_cmd->add_option("--checkpoint", checkpoint, "checkpoint prefix")->required();
  resume_cmd->add_option("--t_end", resume_t_end, "new end time")->required();
  resume_cmd->allow_extras();

  int vdim = 2, vn = 32;
  std::uint64_t vseed = 12345;
  bool vbreak = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
  verify_cmd->add_option("--dim", vdim, "dimension (default 2)");
  verify_cmd->add_option("--n", vn, "points per axis (default 32)");
  verify_cmd->add_option("--seed", vseed, "seed for the randomized batteries");
  verify_cmd->add_flag("--debug.disable_dealias", vbreak,
                       "skip dealiasing in the integrator (mutation check)");

  std::string inspect_path;
  double inspect_r = 3.2;
  auto* inspect_cmd = app.add_subcommand("inspect", "print snapshot metadata and shell spectrum");
  inspect_cmd->add_option("path", inspect_path, "snapshot (.fld) file")->required();
  inspect_cmd->add_option("--r", inspect_r, "Lebesgue exponent of the L^r column");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return do_run(config_path, run_cmd->remaining());
    if (resume_cmd->parsed()) return do_resume(checkpoint, resume_t_end, resume_cmd->remaining());
    if (verify_cmd->parsed()) return do_verify(vdim, vn, vseed, vbreak);
    if (inspect_cmd->parsed()) return do_inspect(inspect_path, inspect_r);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ctns::exit_config_error;
  } catch (const ctns::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ctns::exit_config_error;
  } catch (const ctns::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return ctns::exit_config_error;
  } catch (const ctns::blow_up_error& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return ctns::exit_blow_up;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ctns::exit_config_error;
  }
  return ctns::exit_config_error;
}
