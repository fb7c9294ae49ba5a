#pragma once

#include <filesystem>
#include <string>

#include "hermspec/solver.hpp"

namespace hermspec {

/// Complete run description: scenario, kernel, discretization, adaptivity
/// and IO settings.  Serializes to a single JSON document; every field has
/// a default discoverable via the print-defaults command.
struct RunConfig {
  std::string scenario = "bkw";
  KernelSpec kernel;
  bool kernel_overridden = false;  // false: scenario default kernel
  int N = 0;                       // 0: scenario default
  int N0 = 0;
  int M = 0;
  double t_end = 0.0;  // 0: scenario default
  double dt = 0.0;     // 0: scenario default (possibly CFL-driven)
  double cfl = 0.5;
  double dt_max = 0.1;
  double beta0 = 0.0;
  std::string switches = "none";
  AdaptiveParams adapt;
  int report_every = 10;
  int error_every = 1;
  int threads = 1;
  unsigned long long seed = 20240101ull;  // Monte-Carlo oracles only
  std::string tensor_cache_dir = "cache";
  std::string output_dir = "out";
  bool precompute_if_missing = true;

  /// Scenario with the config's kernel override applied.
  Scenario make_scenario() const;
  /// Effective solver options (scenario defaults filled in).
  SolverOptions make_solver_options() const;
  int effective_N0() const;

  void validate() const;
};

RunConfig default_config(const std::string& scenario_name);
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Applies a dot-path override "a.b.c=value" onto the serialized form.
void apply_override(RunConfig& config, const std::string& assignment);

// ---------------------------------------------------------------------------
// Commands (return codes handled by the CLI wrapper; these throw).
// ---------------------------------------------------------------------------

/// Assembles or verifies the tensor cache; returns the cache path.
std::filesystem::path cmd_precompute(const RunConfig& config, std::ostream& out);

/// Executes the configured run and writes config copy, report CSV,
/// adjustment log and final snapshot into the output directory.
std::filesystem::path cmd_run(const RunConfig& config, std::ostream& out);

/// Compares two report CSVs sharing a time grid; prints ratio rows.
void cmd_compare(const std::filesystem::path& report_a, const std::filesystem::path& report_b,
                 std::ostream& out);

// Report persistence (used by cmd_run and the tests).
void write_report_csv(const RunReport& report, const std::filesystem::path& path);
void write_adjustments_csv(const std::vector<AdjustmentRecord>& log,
                           const std::filesystem::path& path);
void write_snapshot_json(const SpatialField& field, const std::filesystem::path& path);

struct ParsedReport {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
ParsedReport read_report_csv(const std::filesystem::path& path);

}  // namespace hermspec
