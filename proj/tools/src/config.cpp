#include "qhdlab/toolkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>

#include <json.hpp>

namespace qhd::toolkit {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

class Reader {
 public:
  std::vector<std::string> problems;

  void check_keys(const json& obj, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) {
        continue;
      }
      std::string msg = "unknown key \"" + qualified(where, key) + "\"";
      std::string_view best;
      std::size_t best_d = 3;
      for (auto candidate : allowed) {
        const std::size_t d = edit_distance(key, candidate);
        if (d < best_d) {
          best_d = d;
          best = candidate;
        }
      }
      if (!best.empty()) {
        msg += " (did you mean \"" + qualified(where, best) + "\"?)";
      }
      problems.push_back(std::move(msg));
    }
  }

  std::optional<double> number(const json& obj, std::string_view where,
                               const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      problems.push_back(qualified(where, key) + ": expected a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      problems.push_back(qualified(where, key) + ": must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::string> text(const json& obj, std::string_view where,
                                  const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      problems.push_back(qualified(where, key) + ": expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  const json* section(const json& root, const char* key) {
    if (!root.contains(key)) return nullptr;
    const json& v = root.at(key);
    if (!v.is_object()) {
      problems.push_back(std::string(key) + ": expected an object");
      return nullptr;
    }
    return &v;
  }

  static std::string qualified(std::string_view where, std::string_view key) {
    if (where.empty()) return std::string(key);
    return std::string(where) + "." + std::string(key);
  }
};

void require_positive(std::vector<std::string>& problems, double v,
                      const char* name) {
  if (!(v > 0.0)) problems.push_back(std::string(name) + ": must be > 0");
}

bool needs_barrier(Command c) { return c != Command::soliton_verify; }

void collect_violations(const RunConfig& cfg, std::vector<std::string>& out) {
  if (cfg.barrier) {
    require_positive(out, cfg.barrier->width, "barrier.width");
  } else if (needs_barrier(cfg.command)) {
    out.push_back("barrier: section required for command " +
                  std::string(to_string(cfg.command)));
  }
  require_positive(out, cfg.particle.energy, "particle.energy");
  if (cfg.particle.speed) require_positive(out, *cfg.particle.speed, "particle.speed");

  if (cfg.sweep) {
    if (cfg.sweep->steps < 2) out.push_back("sweep_axis.steps: must be >= 2");
    if (!(cfg.sweep->start < cfg.sweep->stop)) {
      out.push_back("sweep_axis.start: must be < sweep_axis.stop");
    }
    if (cfg.command == Command::soliton_verify &&
        cfg.sweep->parameter != SweepParameter::energy) {
      out.push_back("sweep_axis.parameter: soliton-verify sweeps energy only");
    }
    if (cfg.sweep->parameter == SweepParameter::energy && !(cfg.sweep->start > 0.0)) {
      out.push_back("sweep_axis.start: energies must be > 0");
    }
    if (cfg.sweep->parameter == SweepParameter::barrier_width &&
        !(cfg.sweep->start > 0.0)) {
      out.push_back("sweep_axis.start: barrier widths must be > 0");
    }
  } else if (cfg.command == Command::sweep) {
    out.push_back("sweep_axis: required for command sweep");
  }

  const auto& t = cfg.tolerances;
  require_positive(out, t.physics.resonance, "tolerances.resonance");
  require_positive(out, t.physics.singularity, "tolerances.singularity");
  require_positive(out, t.physics.equality, "tolerances.equality");
  require_positive(out, t.time_step, "tolerances.time_step");
  require_positive(out, t.wigner_step, "tolerances.wigner_step");
  if (t.grid_points < 16) out.push_back("tolerances.grid_points: must be >= 16");
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::soliton_verify: return "soliton-verify";
    case Command::scatter: return "scatter";
    case Command::tunnel_time: return "tunnel-time";
    case Command::sweep: return "sweep";
    case Command::flux: return "flux";
    case Command::compare: return "compare";
  }
  return "unknown";
}

std::string_view to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::energy: return "energy";
    case SweepParameter::barrier_width: return "barrier-width";
    case SweepParameter::barrier_height: return "barrier-height";
  }
  return "unknown";
}

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::csv ? "csv" : "json";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (Command c : {Command::soliton_verify, Command::scatter,
                    Command::tunnel_time, Command::sweep, Command::flux,
                    Command::compare}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

double SweepAxis::value(int i) const noexcept {
  if (i >= steps - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) /
                     static_cast<double>(steps - 1);
}

ConfigError::ConfigError(Kind kind, std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = kind == Kind::parse ? "config parse error"
                                              : "config validation failed";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      kind_(kind),
      problems_(std::move(problems)) {}

RunConfig parse_config(std::string_view text,
                       std::optional<Command> command_override) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::parse, {e.what()});
  }
  if (!root.is_object()) {
    throw ConfigError(ConfigError::Kind::parse,
                      {"top level of a config must be an object"});
  }

  Reader r;
  RunConfig cfg;
  r.check_keys(root, "",
               {"command", "context", "barrier", "particle", "sweep_axis", "sweep",
                "tolerances", "output_path", "output_format"});

  if (auto name = r.text(root, "", "command")) {
    if (auto c = parse_command(*name)) {
      cfg.command = *c;
      if (command_override && *command_override != *c) {
        r.problems.push_back("command: config says \"" + *name +
                             "\" but the subcommand is \"" +
                             std::string(to_string(*command_override)) + "\"");
      }
    } else {
      r.problems.push_back("command: unknown command \"" + *name + "\"");
    }
  } else if (command_override) {
    cfg.command = *command_override;
  } else {
    r.problems.push_back("command: required");
  }

  if (const json* ctx = r.section(root, "context")) {
    r.check_keys(*ctx, "context", {"units", "hbar", "mass", "charge"});
    const std::string units = r.text(*ctx, "context", "units").value_or("natural");
    const auto hbar = r.number(*ctx, "context", "hbar");
    const auto mass = r.number(*ctx, "context", "mass");
    const auto charge = r.number(*ctx, "context", "charge");
    try {
      if (units == "natural") {
        cfg.context = PhysicalContext::make(UnitSystem::natural, hbar.value_or(1.0),
                                            mass.value_or(1.0), charge.value_or(1.0));
      } else if (units == "SI" || units == "si") {
        const auto base = PhysicalContext::si();
        cfg.context = PhysicalContext::make(
            UnitSystem::si, hbar.value_or(base.hbar()), mass.value_or(base.mass()),
            charge.value_or(base.charge()));
      } else {
        r.problems.push_back("context.units: expected \"natural\" or \"SI\"");
      }
    } catch (const Error& e) {
      r.problems.push_back(std::string("context: ") + e.what());
    }
  }

  if (const json* b = r.section(root, "barrier")) {
    r.check_keys(*b, "barrier", {"width", "height", "origin"});
    Barrier barrier;
    if (auto w = r.number(*b, "barrier", "width")) {
      barrier.width = *w;
    } else if (!b->contains("width")) {
      r.problems.push_back("barrier.width: required");
    }
    barrier.height = r.number(*b, "barrier", "height").value_or(0.0);
    barrier.origin = r.number(*b, "barrier", "origin").value_or(0.0);
    cfg.barrier = barrier;
  }

  if (const json* p = r.section(root, "particle")) {
    r.check_keys(*p, "particle", {"energy", "speed", "start_x", "start_t"});
    cfg.particle.energy = r.number(*p, "particle", "energy").value_or(0.5);
    cfg.particle.speed = r.number(*p, "particle", "speed");
    cfg.particle.start_x = r.number(*p, "particle", "start_x").value_or(0.0);
    cfg.particle.start_t = r.number(*p, "particle", "start_t").value_or(0.0);
  }

  if (root.contains("sweep_axis") && root.contains("sweep")) {
    r.problems.push_back("sweep: give either \"sweep\" or \"sweep_axis\", not both");
  }
  const json* sweep_section = root.contains("sweep_axis")
                                  ? r.section(root, "sweep_axis")
                                  : r.section(root, "sweep");
  if (const json* s = sweep_section) {
    r.check_keys(*s, "sweep_axis", {"parameter", "start", "stop", "steps"});
    SweepAxis axis;
    const std::string param = r.text(*s, "sweep_axis", "parameter").value_or("energy");
    if (param == "energy") {
      axis.parameter = SweepParameter::energy;
    } else if (param == "barrier-width") {
      axis.parameter = SweepParameter::barrier_width;
    } else if (param == "barrier-height") {
      axis.parameter = SweepParameter::barrier_height;
    } else {
      r.problems.push_back("sweep_axis.parameter: unknown parameter \"" + param +
                           "\" (energy, barrier-width, barrier-height)");
    }
    for (const char* key : {"start", "stop", "steps"}) {
      if (!s->contains(key)) {
        r.problems.push_back(std::string("sweep_axis.") + key + ": required");
      }
    }
    axis.start = r.number(*s, "sweep_axis", "start").value_or(0.0);
    axis.stop = r.number(*s, "sweep_axis", "stop").value_or(0.0);
    const double steps = r.number(*s, "sweep_axis", "steps").value_or(2.0);
    if (steps != std::floor(steps) || steps > 1e7) {
      r.problems.push_back("sweep_axis.steps: must be an integer");
    } else {
      axis.steps = static_cast<int>(steps);
    }
    cfg.sweep = axis;
  }

  if (const json* t = r.section(root, "tolerances")) {
    r.check_keys(*t, "tolerances",
                 {"resonance", "singularity", "equality", "grid_points",
                  "time_step", "wigner_step"});
    auto& tol = cfg.tolerances;
    tol.physics.resonance = r.number(*t, "tolerances", "resonance").value_or(1e-9);
    tol.physics.singularity =
        r.number(*t, "tolerances", "singularity").value_or(1e-12);
    tol.physics.equality = r.number(*t, "tolerances", "equality").value_or(1e-12);
    const double grid = r.number(*t, "tolerances", "grid_points").value_or(2048.0);
    if (grid != std::floor(grid) || grid > 1e8) {
      r.problems.push_back("tolerances.grid_points: must be an integer");
    } else {
      tol.grid_points = static_cast<int>(grid);
    }
    tol.time_step = r.number(*t, "tolerances", "time_step").value_or(1e-4);
    tol.wigner_step = r.number(*t, "tolerances", "wigner_step").value_or(1e-5);
  }

  cfg.output_path = r.text(root, "", "output_path").value_or("");
  if (auto fmt = r.text(root, "", "output_format")) {
    if (auto f = parse_format(*fmt)) {
      cfg.output_format = *f;
    } else {
      r.problems.push_back("output_format: expected \"csv\" or \"json\"");
    }
  }

  collect_violations(cfg, r.problems);
  if (!r.problems.empty()) {
    throw ConfigError(ConfigError::Kind::validation, std::move(r.problems));
  }
  return cfg;
}

void validate(const RunConfig& config) {
  std::vector<std::string> problems;
  collect_violations(config, problems);
  if (!problems.empty()) {
    throw ConfigError(ConfigError::Kind::validation, std::move(problems));
  }
}

std::string config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["context"] = {{"units", to_string(cfg.context.units())},
                  {"hbar", cfg.context.hbar()},
                  {"mass", cfg.context.mass()},
                  {"charge", cfg.context.charge()}};
  if (cfg.barrier) {
    j["barrier"] = {{"width", cfg.barrier->width},
                    {"height", cfg.barrier->height},
                    {"origin", cfg.barrier->origin}};
  }
  ordered_json p = {{"energy", cfg.particle.energy}};
  if (cfg.particle.speed) p["speed"] = *cfg.particle.speed;
  p["start_x"] = cfg.particle.start_x;
  p["start_t"] = cfg.particle.start_t;
  j["particle"] = p;
  if (cfg.sweep) {
    j["sweep_axis"] = {{"parameter", to_string(cfg.sweep->parameter)},
                       {"start", cfg.sweep->start},
                       {"stop", cfg.sweep->stop},
                       {"steps", cfg.sweep->steps}};
  }
  const auto& t = cfg.tolerances;
  j["tolerances"] = {{"resonance", t.physics.resonance},
                     {"singularity", t.physics.singularity},
                     {"equality", t.physics.equality},
                     {"grid_points", t.grid_points},
                     {"time_step", t.time_step},
                     {"wigner_step", t.wigner_step}};
  j["output_path"] = cfg.output_path;
  j["output_format"] = to_string(cfg.output_format);
  return j.dump(2);
}

}  // namespace qhd::toolkit
