#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ctns/snapshot.hpp"

namespace fs = std::filesystem;

namespace {

std::string scratch_dir() {
  static const std::string dir = [] {
    std::string d = (fs::temp_directory_path() / "ctns_cli_test").string();
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(CTNS_CLI_PATH) + " " + args;
  cmd += out_file.empty() ? " > /dev/null 2>&1" : (" > " + out_file + " 2>&1");
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

std::string write_file(const std::string& name, const std::string& body) {
  const std::string path = scratch_dir() + "/" + name;
  std::ofstream os(path);
  os << body;
  return path;
}

}  // namespace

TEST_CASE("run verb completes a zero run with exit 0") {
  const std::string cfg = write_file("zero.cfg",
                                     "grid.dim = 2\ngrid.n = 16\nintegrator.t_end = 0.01\n"
                                     "ic.preset = zero\noutput.dir = " +
                                         scratch_dir() + "/zero_out\n");
  CHECK(run_cli("run --config " + cfg) == 0);
  const std::string csv = slurp(scratch_dir() + "/zero_out/run.csv");
  CHECK(csv.find("t,Lambda_u,Q_u") == 0);
  // every data value in a zero run is zero
  CHECK(csv.find("nan") == std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  const std::string cfg = write_file("bad.cfg", "grid.n = 16\nnot.a.key = 1\n");
  CHECK(run_cli("run --config " + cfg) == 2);
  CHECK(run_cli("run --config " + scratch_dir() + "/missing.cfg") == 2);
  const std::string cfg2 = write_file("bad2.cfg", "grid.n = 17\n");
  CHECK(run_cli("run --config " + cfg2) == 2);
}

TEST_CASE("overrides mirror config keys") {
  const std::string cfg = write_file("base.cfg",
                                     "grid.dim = 2\ngrid.n = 16\nintegrator.t_end = 0.01\n"
                                     "ic.preset = zero\n");
  const std::string out = scratch_dir() + "/override_out";
  CHECK(run_cli("run --config " + cfg + " --output.dir=" + out + " --monitor.C0=0.25") == 0);
  const std::string summary = slurp(out + "/run.summary");
  CHECK(summary.find("monitor.C0 = 0.25") != std::string::npos);
}

TEST_CASE("blow-up exits with code 3 and preserves outputs") {
  const std::string cfg = write_file("boom.cfg",
                                     "grid.dim = 2\ngrid.n = 16\nintegrator.dt = 1\n"
                                     "integrator.t_end = 50\nic.preset = taylor_green\n"
                                     "ic.amplitude = 1e120\noutput.dir = " +
                                         scratch_dir() + "/boom_out\n");
  CHECK(run_cli("run --config " + cfg) == 3);
  CHECK(fs::exists(scratch_dir() + "/boom_out/run.csv"));
}

TEST_CASE("verify verb reports properties and honors the mutation flag") {
  const std::string report = scratch_dir() + "/verify.txt";
  CHECK(run_cli("verify --n 16 --seed 7", report) == 0);
  const std::string text = slurp(report);
  CHECK(text.find("PASS partition_of_unity") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);

  // identical bytes on a repeated run with the same seed
  const std::string report2 = scratch_dir() + "/verify2.txt";
  CHECK(run_cli("verify --n 16 --seed 7", report2) == 0);
  CHECK(slurp(report) == slurp(report2));

  // broken dealiasing must trip the budget property (exit 4)
  CHECK(run_cli("verify --n 16 --seed 7 --debug.disable_dealias") == 4);
}

TEST_CASE("resume and inspect verbs work against run artifacts") {
  const std::string out = scratch_dir() + "/resume_src";
  const std::string cfg = write_file("src.cfg",
                                     "grid.dim = 2\ngrid.n = 16\nintegrator.t_end = 0.02\n"
                                     "ic.preset = single_mode\nic.amplitude = 0.2\n"
                                     "output.dir = " + out + "\n");
  REQUIRE(run_cli("run --config " + cfg) == 0);

  CHECK(run_cli("resume --checkpoint " + out + "/run.final --t_end 0.04 --output.dir=" +
                scratch_dir() + "/resumed_out") == 0);

  const std::string inspect_out = scratch_dir() + "/inspect.txt";
  CHECK(run_cli("inspect " + out + "/run.final.c.fld", inspect_out) == 0);
  const std::string text = slurp(inspect_out);
  CHECK(text.find("n_per_axis = 16") != std::string::npos);
  CHECK(text.find("q,lambda_q,l2_norm,linf_norm,lr_norm") != std::string::npos);

  CHECK(run_cli("inspect " + scratch_dir() + "/nothing.fld") == 2);
}
