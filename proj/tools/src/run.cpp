#include "qhdlab/toolkit/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include <json.hpp>

#include "qhdlab/chronometry.hpp"
#include "qhdlab/junction.hpp"
#include "qhdlab/oracle.hpp"
#include "qhdlab/scattering.hpp"
#include "qhdlab/soliton.hpp"

namespace qhd::toolkit {
namespace {

struct Point {
  ParticleState particle;
  Barrier barrier;
};

Cell opt(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

Cell opt(const std::optional<int>& v) {
  if (v) return static_cast<long long>(*v);
  return std::monostate{};
}

Cell status_of(const Error& e) { return std::string(to_string(e.code())); }

std::size_t row_count(const RunConfig& cfg) {
  return cfg.sweep ? static_cast<std::size_t>(cfg.sweep->steps) : 1;
}

Point point_at(const RunConfig& cfg, std::size_t i) {
  Point p;
  p.barrier = cfg.barrier.value_or(Barrier{});
  p.particle.energy = cfg.particle.energy;
  p.particle.start_x = cfg.particle.start_x;
  p.particle.start_t = cfg.particle.start_t;
  if (cfg.sweep) {
    const double v = cfg.sweep->value(static_cast<int>(i));
    switch (cfg.sweep->parameter) {
      case SweepParameter::energy: p.particle.energy = v; break;
      case SweepParameter::barrier_width: p.barrier.width = v; break;
      case SweepParameter::barrier_height: p.barrier.height = v; break;
    }
  }
  p.particle.speed = cfg.particle.speed.value_or(
      std::sqrt(2.0 * p.particle.energy / cfg.context.mass()));
  return p;
}

// Leading columns shared by the barrier commands.
Row base_cells(const Point& p) {
  return {p.particle.energy, p.barrier.height, p.barrier.width};
}

const std::vector<std::string>& columns_for(Command c) {
  static const std::vector<std::string> soliton = {
      "energy", "mu", "speed", "support_width", "de_broglie", "q_exact",
      "q_max_error", "continuity_residual", "momentum_residual", "status"};
  static const std::vector<std::string> scatter = {
      "energy", "v0", "a", "k1", "k2", "regime", "rho1", "rho2", "rho3",
      "resonant", "n", "status"};
  static const std::vector<std::string> tunnel = {
      "energy", "v0", "a", "k1", "k2", "arccos_arg", "status", "t3",
      "tau_soliton", "tau_wigner", "T_oracle", "resonant", "odd_resonance"};
  static const std::vector<std::string> sweep = {
      "energy", "v0", "a", "k1", "k2", "winding", "n", "residual",
      "resonant", "status"};
  static const std::vector<std::string> flux = {
      "energy", "v0", "a", "regime", "p1", "p2", "loop_length", "n",
      "residual", "flux", "lossless", "lhs", "rhs", "prefactor", "status"};
  static const std::vector<std::string> compare = {
      "energy", "v0", "a", "k1", "k2", "regime", "tau_soliton", "soliton_status",
      "tau_wigner", "ratio_soliton", "T_oracle", "soliton_residual", "soliton_n",
      "soliton_resonant", "oracle_residual", "oracle_resonant", "agree", "status"};
  switch (c) {
    case Command::soliton_verify: return soliton;
    case Command::scatter: return scatter;
    case Command::tunnel_time: return tunnel;
    case Command::sweep: return sweep;
    case Command::flux: return flux;
    case Command::compare: return compare;
  }
  return soliton;
}

Row soliton_row(const RunConfig& cfg, const Point& p) {
  const auto& ctx = cfg.context;
  Row row{p.particle.energy};
  try {
    const Soliton s = build_soliton(p.particle.energy, 0.0, ctx, 1.0,
                                    cfg.particle.speed, p.particle.start_x,
                                    p.particle.start_t);
    const auto n = static_cast<std::size_t>(cfg.tolerances.grid_points);
    const double q_exact = ctx.hbar() * ctx.hbar() * s.wavenumber *
                           s.wavenumber / (2.0 * ctx.mass());
    double q_err = 0.0;
    for (const auto& q : quantum_potential_numeric(sample_support(s, s.center_t, n), ctx)) {
      q_err = std::max(q_err, std::abs(q.q - q_exact));
    }
    row.insert(row.end(),
               {s.wavenumber, s.speed, s.support_width(),
                de_broglie_wavelength(p.particle.energy, 0.0, ctx), q_exact,
                q_err, residual_continuity(s, n, cfg.tolerances.time_step),
                residual_momentum(s, n, ctx), std::string("ok")});
  } catch (const Error& e) {
    row.resize(columns_for(Command::soliton_verify).size() - 1);
    row.push_back(status_of(e));
  }
  return row;
}

Row scatter_row(const RunConfig& cfg, const ScatteringSetup& setup) {
  Row row = base_cells({setup.particle, setup.barrier});
  row.insert(row.end(), {setup.k1, setup.k2,
                         std::string(to_string(setup.regime)), 1.0});
  try {
    const ScatteringSolution sol = solve_regions(setup, 1.0, cfg.tolerances.physics);
    row.insert(row.end(), {sol.rho2, sol.rho3, sol.resonant,
                           opt(sol.resonance_index), std::string("ok")});
  } catch (const Error& e) {
    row.insert(row.end(), {1.0, std::monostate{}, std::monostate{},
                           std::monostate{}, status_of(e)});
  }
  return row;
}

Row tunnel_row(const RunConfig& cfg, const ScatteringSetup& setup) {
  const TunnelingReport rep = traversal_time(setup, cfg.tolerances.physics);
  const OracleResult oracle = evaluate_oracle(
      setup.particle.energy, setup.barrier, setup.ctx, cfg.tolerances.wigner_step);
  Row row = base_cells({setup.particle, setup.barrier});
  row.insert(row.end(),
             {setup.k1, setup.k2, rep.arccos_argument,
              std::string(to_string(rep.status)), opt(rep.total_time),
              opt(rep.tunneling_time), opt(oracle.wigner_time),
              oracle.transmission, rep.resonant, rep.odd_resonance});
  return row;
}

Row sweep_row(const RunConfig& cfg, const ScatteringSetup& setup) {
  Row row = base_cells({setup.particle, setup.barrier});
  row.insert(row.end(), {setup.k1, setup.k2});
  try {
    const ResonanceCheck check = is_resonant(setup, cfg.tolerances.physics.resonance);
    row.insert(row.end(), {check.winding, static_cast<long long>(check.nearest_n),
                           check.residual, check.resonant, std::string("ok")});
  } catch (const Error& e) {
    row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{},
                           std::monostate{}, status_of(e)});
  }
  return row;
}

Row flux_row(const RunConfig& cfg, const ScatteringSetup& setup) {
  const auto& tol = cfg.tolerances.physics;
  Row row = base_cells({setup.particle, setup.barrier});
  row.push_back(std::string(to_string(setup.regime)));
  const JunctionState state{setup, false};
  Cell status = std::string("ok");
  try {
    const FluxRecord rec = quantize_junction(setup);
    row.insert(row.end(), {rec.p1, rec.p2, rec.loop_length,
                           static_cast<long long>(rec.n), rec.residual, rec.flux});
  } catch (const Error& e) {
    row.insert(row.end(), {setup.ctx.hbar() * setup.k1, std::monostate{},
                           2.0 * pi, std::monostate{}, std::monostate{},
                           std::monostate{}});
    status = status_of(e);
  }
  const LosslessCheck lossless = lossless_condition(state, tol.resonance);
  row.insert(row.end(), {lossless.lossless, lossless.lhs, lossless.rhs});
  try {
    row.push_back(transmitted_prefactor(state, tol));
  } catch (const Error& e) {
    row.push_back(std::monostate{});
    status = status_of(e);
  }
  row.push_back(status);
  return row;
}

Row compare_row(const RunConfig& cfg, const ScatteringSetup& setup) {
  const ComparisonRecord rec =
      compare_report(setup, cfg.tolerances.physics, cfg.tolerances.wigner_step);
  Row row = base_cells({setup.particle, setup.barrier});
  const std::string soliton_status(to_string(rec.soliton_time.status));
  row.insert(row.end(),
             {setup.k1, setup.k2, std::string(to_string(setup.regime)),
              opt(rec.soliton_time.tunneling_time), soliton_status,
              opt(rec.oracle.wigner_time), opt(rec.soliton_ratio),
              rec.oracle.transmission, opt(rec.soliton_residual), opt(rec.soliton_n),
              rec.soliton_resonant, opt(rec.oracle_residual), rec.oracle_resonant,
              rec.resonances_agree(), soliton_status});
  return row;
}

Row evaluate_row(const RunConfig& cfg, std::size_t i) {
  const Point p = point_at(cfg, i);
  if (cfg.command == Command::soliton_verify) return soliton_row(cfg, p);

  const std::size_t width = columns_for(cfg.command).size();
  ScatteringSetup setup;
  try {
    setup = make_setup(p.particle, p.barrier, cfg.context);
  } catch (const Error& e) {
    Row row = base_cells(p);
    row.resize(width - 1);
    row.push_back(status_of(e));
    return row;
  }
  switch (cfg.command) {
    case Command::scatter: return scatter_row(cfg, setup);
    case Command::tunnel_time: return tunnel_row(cfg, setup);
    case Command::sweep: return sweep_row(cfg, setup);
    case Command::flux: return flux_row(cfg, setup);
    case Command::compare: return compare_row(cfg, setup);
    case Command::soliton_verify: break;
  }
  return {};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

// Resonance roots the sweep grid should bracket, for the manifest.
std::string cross_check(const RunConfig& cfg, const Table& table) {
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  if (cfg.command == Command::flux || cfg.command == Command::compare) {
    // pi hbar / q per quantum; equal to the conventional h / 2q once q is
    // taken as the carrier (pair) charge.
    extra["flux_quantum"] = {
        {"model", flux_from_quantum_number(1, cfg.context)},
        {"conventional_h_over_2q", cfg.context.planck() / (2.0 * cfg.context.charge())},
        {"carrier_charge", cfg.context.charge()}};
  }
  if (cfg.command != Command::sweep || !cfg.sweep ||
      cfg.sweep->parameter != SweepParameter::energy || !cfg.barrier) {
    return extra.dump();
  }
  const auto roots = resonance_roots_between(*cfg.barrier, cfg.sweep->start,
                                             cfg.sweep->stop, cfg.context);
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : roots) list.push_back({{"n", r.n}, {"energy", r.energy}});
  extra["resonance_roots"] = list;

  const std::size_t col = table.column("winding");
  long long crossings = 0;
  std::optional<double> prev;
  for (const Row& row : table.rows) {
    const auto* w = std::get_if<double>(&row[col]);
    if (w == nullptr) {
      prev.reset();
      continue;
    }
    if (prev) crossings += std::llabs(static_cast<long long>(std::floor(*w)) -
                                      static_cast<long long>(std::floor(*prev)));
    prev = *w;
  }
  extra["winding_crossings"] = crossings;
  return extra.dump();
}

}  // namespace

Table evaluate(const RunConfig& config, unsigned jobs) {
  validate(config);
  Table table;
  table.columns = columns_for(config.command);
  const std::size_t n = row_count(config);
  table.rows.resize(n);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) table.rows[i] = evaluate_row(config, i);
    return table;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          table.rows[i] = evaluate_row(config, i);
        }
      });
    }
  }
  return table;
}

std::string render(const Table& table, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(table) : render_json(table);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["row_count"] = row_count;
  j["flagged_rows"] = flagged_rows;
  j["result_path"] = result_path;
  j["jobs"] = jobs;
  j["config"] = nlohmann::ordered_json::parse(config_echo);
  j["cross_check"] = nlohmann::ordered_json::parse(extra_json);
  return j.dump(2) + "\n";
}

std::string manifest_path_for(const std::string& result_path) {
  std::filesystem::path p(result_path);
  p.replace_extension(".manifest.json");
  return p.string();
}

RunManifest run(const RunConfig& config, unsigned jobs) {
  validate(config);
  if (config.output_path.empty()) throw IoError("no output path given");

  RunManifest manifest;
  manifest.tool_version = tool_version;
  manifest.config_echo = config_to_json(config);
  manifest.started_at = utc_now();
  manifest.jobs = std::max(1u, jobs);

  const Table table = evaluate(config, jobs);
  write_file(config.output_path, render(table, config.output_format));

  manifest.finished_at = utc_now();
  manifest.row_count = table.rows.size();
  manifest.flagged_rows = table.flagged_rows();
  manifest.result_path = config.output_path;
  manifest.manifest_path = manifest_path_for(config.output_path);
  manifest.extra_json = cross_check(config, table);
  write_file(manifest.manifest_path, manifest.to_json());
  return manifest;
}

}  // namespace qhd::toolkit
