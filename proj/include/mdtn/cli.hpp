#pragma once

// Command layer of the mdtn tool: resolves a RunConfig from a key-value file
// plus flag overrides, runs one suite, renders the CSV report.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdtn/config.hpp"
#include "mdtn/suites.hpp"

namespace mdtn {

enum class Command { Identities, Eikonal, Residual, DtnCompare, TeScan, Quantizer };

/// ConfigError for unknown names.
Command parse_command(const std::string& name);
const char* command_name(Command c);
/// Config section read by the command ("identities", "eikonal", "residual", "dtn", "te", "quantizer").
const char* command_section(Command c);

struct RunConfig {
  Command command = Command::Identities;
  SurfaceChart chart = SurfaceChart::sphere(1.0);
  Media media;
  std::string output_dir = ".";
  int threads = 1;
  std::uint64_t seed = 1;

  IdentityOptions identities;
  EikonalSuiteOptions eikonal;
  ResidualSuiteOptions residual;
  DtnSuiteOptions dtn;
  TeScanOptions te;
  QuantizerSuiteOptions quantizer;

  std::vector<std::pair<std::string, std::string>> resolved;
};

struct RunOverrides {
  std::optional<std::string> output_dir;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  /// Replaces the built-in default tolerance when the file sets none.
  std::optional<double> tolerance;
};

/// Throws ConfigError on invalid or unknown keys. Keys in the sections of
/// other commands are accepted and ignored.
RunConfig resolve_config(Command command, KeyValueConfig& kv, const RunOverrides& overrides = {});

struct RunOutput {
  int status = 0;  // 0 pass, 1 check failure, 2 configuration or precondition error
  std::string csv;
  std::vector<std::string> summary;
};

/// Runs the suite; library errors become status 2 with the module-qualified message.
RunOutput run_suite(const RunConfig& cfg);

/// "# "-prefixed resolved config, the table, then "# check" and "# note" lines.
std::string render_csv(const RunConfig& cfg, const SuiteReport& rep);

}  // namespace mdtn
