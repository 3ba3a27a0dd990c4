#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhd {

enum class ErrorCode {
  invalid_argument,
  degenerate_energy,     // E <= V where a positive wavenumber is required
  insufficient_grid,
  zero_density,          // finite-difference stencil touches the support boundary
  matching_singularity,  // a wall-matching denominator vanishes
  arccos_domain,         // arrival-time argument outside [-1, 1]
  regime,                // operation not defined for this energy regime
  regime_straddle,       // finite-difference window crosses E = V0
  bound_violation,       // indeterminacy bound broken
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain failure raised by the physics modules. Sweeps catch it and turn
/// the code into a row status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhd
