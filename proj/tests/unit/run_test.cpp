#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qhdlab/toolkit/run.hpp"

using namespace qhd::toolkit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qhdlab_run_test";
  fs::create_directories(dir);
  return dir / name;
}

int cli(const std::string& args) {
  const int status = std::system((std::string(QHDLAB_CLI) + " " + args + " 2>/dev/null").c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

RunConfig energy_sweep(Command command, int steps) {
  RunConfig cfg;
  cfg.command = command;
  cfg.barrier = qhd::Barrier{10.0, 1.0, 0.0};
  cfg.sweep = SweepAxis{SweepParameter::energy, 0.1, 10.0, steps};
  return cfg;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("tables are independent of the job count") {
  for (Command c : {Command::scatter, Command::tunnel_time, Command::sweep,
                    Command::flux, Command::compare}) {
    const RunConfig cfg = energy_sweep(c, 57);
    const Table serial = evaluate(cfg, 1);
    const Table parallel = evaluate(cfg, 8);
    CHECK(serial.rows.size() == 57);
    CHECK(render(serial, OutputFormat::csv) == render(parallel, OutputFormat::csv));
    CHECK(render(serial, OutputFormat::json) == render(parallel, OutputFormat::json));
  }
}

TEST_CASE("scatter rows carry the example densities") {
  RunConfig cfg;
  cfg.command = Command::scatter;
  cfg.barrier = qhd::Barrier{qhd::pi / 3, 0.375, 0.0};
  cfg.particle.energy = 0.5;
  const Table t = evaluate(cfg);
  REQUIRE(t.rows.size() == 1);
  const auto rho3 = std::get<double>(t.rows[0][t.column("rho3")]);
  CHECK(rho3 == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("out-of-domain tunnel-time rows are flagged without a number") {
  const Table t = evaluate(energy_sweep(Command::tunnel_time, 101));
  const std::size_t status = t.column("status");
  const std::size_t tau = t.column("tau_soliton");
  std::size_t flagged = 0;
  for (const auto& row : t.rows) {
    if (std::get<std::string>(row[status]) != "ok") {
      ++flagged;
      CHECK(std::holds_alternative<std::monostate>(row[tau]));
    }
  }
  CHECK(flagged == t.flagged_rows());
  CHECK(flagged > 0);
}

TEST_CASE("compare without a barrier height") {
  RunConfig cfg;
  cfg.command = Command::compare;
  cfg.barrier = qhd::Barrier{2.5, 0.0, 0.0};
  cfg.particle.energy = 0.8;
  const Table t = evaluate(cfg);
  REQUIRE(t.rows.size() == 1);
  const auto& row = t.rows[0];
  CHECK(std::get<double>(row[t.column("tau_soliton")]) == 0.0);
  CHECK(std::get<double>(row[t.column("tau_wigner")]) ==
        doctest::Approx(2.5 / std::sqrt(1.6)).epsilon(1e-8));
  CHECK(std::get<double>(row[t.column("T_oracle")]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sweep rows agree with the root finder") {
  RunConfig cfg = energy_sweep(Command::sweep, 101);
  cfg.sweep->start = 1.0 + 1e-9;
  cfg.output_path = scratch("roots.csv").string();
  const RunManifest m = run(cfg);
  const auto j = nlohmann::json::parse(slurp(m.manifest_path));
  const auto& check = j.at("cross_check");
  CHECK(check.at("resonance_roots").size() == 4);
  CHECK(check.at("winding_crossings").get<long long>() == 4);

  const Table t = evaluate(cfg);
  const std::size_t residual = t.column("residual"), resonant = t.column("resonant");
  for (const auto& row : t.rows) {
    const bool small = std::get<double>(row[residual]) < cfg.tolerances.physics.resonance;
    CHECK(std::get<bool>(row[resonant]) == small);
  }
  CHECK(m.flagged_rows <= m.row_count);
}

TEST_CASE("manifest path") {
  CHECK(manifest_path_for("out.csv") == "out.manifest.json");
  CHECK(manifest_path_for("dir/run.json") == "dir/run.manifest.json");
  CHECK(manifest_path_for("plain") == "plain.manifest.json");
}

TEST_CASE("run writes result and manifest") {
  RunConfig cfg = energy_sweep(Command::sweep, 101);
  cfg.output_path = scratch("sweep.csv").string();
  const RunManifest m = run(cfg, 4);
  CHECK(m.row_count == 101);
  CHECK(fs::exists(cfg.output_path));
  const std::string manifest = slurp(m.manifest_path);
  CHECK(manifest.find("\"tool_version\"") != std::string::npos);
  CHECK(manifest.find("resonance_roots") != std::string::npos);
  CHECK(manifest.find("winding_crossings") != std::string::npos);
}

TEST_CASE("unwritable output is an I/O error") {
  RunConfig cfg = energy_sweep(Command::scatter, 3);
  cfg.output_path = "/nonexistent-dir/x/out.csv";
  CHECK_THROWS_AS(run(cfg), IoError);
}

TEST_CASE("CLI exit codes and determinism") {
  const fs::path cfg_path = scratch("cli.json");
  {
    std::ofstream out(cfg_path);
    out << R"({"barrier": {"width": 10, "height": 1},
               "sweep_axis": {"parameter": "energy", "start": 1.05, "stop": 10, "steps": 64}})";
  }
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  CHECK(cli("compare --config " + cfg_path.string() + " --output " + a.string()) != 1);
  CHECK(cli("compare --config " + cfg_path.string() + " --output " + b.string() +
            " --jobs 8") != 1);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const fs::path bad = scratch("bad.json");
  {
    std::ofstream out(bad);
    out << R"({"barier": {"width": 1}})";
  }
  CHECK(cli("scatter --config " + bad.string() + " --output " + scratch("x.csv").string()) == 1);
  CHECK(cli("scatter --config " + cfg_path.string() + " --output /nonexistent-dir/x.csv") == 2);
  CHECK(cli("soliton-verify --output " + scratch("s.csv").string()) == 0);
}
