#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "qhdlab/toolkit/config.hpp"
#include "qhdlab/toolkit/table.hpp"

namespace qhd::toolkit {

inline constexpr const char* tool_version = "qhdlab 0.3.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates every row of the run. Rows are independent; with jobs > 1 they
/// are computed on worker threads and stored by index, so the table is the
/// same for any job count. Domain failures become a row status.
Table evaluate(const RunConfig& config, unsigned jobs = 1);

std::string render(const Table& table, OutputFormat format);

struct RunManifest {
  std::string config_echo;  // canonical JSON of the config
  std::string tool_version;
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;
  std::size_t row_count = 0;
  std::size_t flagged_rows = 0;
  std::string result_path;
  std::string manifest_path;
  unsigned jobs = 1;
  std::string extra_json = "{}";  // command-specific cross-check data

  std::string to_json() const;
};

/// "out.csv" -> "out.manifest.json".
std::string manifest_path_for(const std::string& result_path);

/// Validates, evaluates, writes the result file and its manifest.
/// Throws ConfigError or IoError.
RunManifest run(const RunConfig& config, unsigned jobs = 1);

}  // namespace qhd::toolkit
