#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "triage/engine.hpp"
#include "triage/experiments.hpp"

namespace triage {

/// Settings read from an INI-style file:
///
///   [simulation]    days, seed, replications, label_model, flush_mode,
///                   prevalence_file, trace_file, summary_file, audit_file
///   [distributions] arrivals_file, reporting_file, outlier_cutoff_min
///   [classifier]    op, fpr, operating_point_file
///   [worklist]      policy, max_wait_min
///   [sweep]         grid, target
///
/// Relative paths are resolved against the directory of the config file.
struct RunConfig {
  int days = 1000;
  std::uint64_t seed = 20191105;
  int replications = 1;
  LabelModel label_model = LabelModel::Independent;
  FlushMode flush = FlushMode::Force;
  Policy policy = Policy::Fifo;
  std::string op = "low-fpr";
  std::optional<double> fpr;
  double max_wait_min = kDefaultMaxWait;
  double outlier_cutoff_min = kDefaultOutlierCutoff;

  std::filesystem::path prevalence_file;
  std::filesystem::path arrivals_file;
  std::filesystem::path reporting_file;
  std::filesystem::path operating_point_file;
  std::filesystem::path trace_file;
  std::filesystem::path summary_file;
  std::filesystem::path audit_file;

  SweepSpec sweep;

  /// Loads data files and builds the engine configuration. Throws ConfigError
  /// for bad settings and DataError for unusable files.
  SimulationConfig to_simulation_config() const;
};

/// Throws ConfigError on unknown sections or keys and unparsable values,
/// MissingFile if the file does not exist.
RunConfig load_config(const std::filesystem::path &path);

/// Parses a comma-separated list of numbers.
std::vector<double> parse_number_list(const std::string &text);

} // namespace triage
