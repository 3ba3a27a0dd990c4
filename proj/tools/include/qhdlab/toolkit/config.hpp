#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhdlab/physics.hpp"

namespace qhd::toolkit {

enum class Command { soliton_verify, scatter, tunnel_time, sweep, flux, compare };
enum class SweepParameter { energy, barrier_width, barrier_height };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(SweepParameter p) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

struct SweepAxis {
  SweepParameter parameter = SweepParameter::energy;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  /// start + i (stop - start) / (steps - 1); the last value is exactly stop.
  double value(int i) const noexcept;
};

/// Particle as written in a config. A missing speed resolves per row to the
/// free-particle speed sqrt(2E/m), so energy sweeps keep c consistent with E.
struct ParticleSpec {
  double energy = 0.5;
  std::optional<double> speed;
  double start_x = 0.0;
  double start_t = 0.0;
};

struct RunTolerances {
  Tolerances physics;
  int grid_points = 2048;
  double time_step = 1e-4;
  double wigner_step = 1e-5;  // relative to min(E, |E - V0|)
};

struct RunConfig {
  Command command = Command::soliton_verify;
  PhysicalContext context = PhysicalContext::natural();
  std::optional<Barrier> barrier;
  ParticleSpec particle;
  std::optional<SweepAxis> sweep;
  RunTolerances tolerances;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
};

/// Malformed document or invariant breach. For validation failures every
/// violation is listed, one per entry.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };

  ConfigError(Kind kind, std::vector<std::string> problems);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  Kind kind_;
  std::vector<std::string> problems_;
};

/// Strict JSON config parser. Unknown keys are rejected with the closest
/// known key as a suggestion. command_override (from the CLI subcommand)
/// fills in a missing "command" and must agree with a present one.
RunConfig parse_config(std::string_view text,
                       std::optional<Command> command_override = std::nullopt);

/// Re-validates a programmatically built config; throws ConfigError.
void validate(const RunConfig& config);

/// Canonical JSON echo of a config, as stored in run manifests.
std::string config_to_json(const RunConfig& config);

}  // namespace qhd::toolkit
