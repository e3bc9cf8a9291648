#pragma once

// Scenario execution and file output.
//
// A run writes <output_dir>/<name>.csv (one row per kick, k = 0..n_kicks)
// and <output_dir>/<name>_summary.json. A sweep writes one CSV per value,
// named <name>_<key>_<value>.csv, plus <name>_sweep_<key>.json.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nqs/diagnostics.hpp"
#include "nqs/scenario.hpp"

namespace nqs {

/// Trajectory CSV header; column order is part of the file format.
inline constexpr std::string_view kCsvHeader =
    "kick,time,p_00,p_01,p_10,p_11,leakage,fid_b1,fid_b2,entropy,norm_error";

struct RunSummary {
  double max_leakage = 0.0;
  double mean_leakage = 0.0;
  double max_fid_b1 = 0.0;
  double max_fid_b2 = 0.0;
  std::size_t bell_event_count = 0;
  std::size_t separable_event_count = 0;
  double max_norm_error = 0.0;
  double runtime_seconds = 0.0;
};

struct ScenarioResult {
  KickTrajectory trajectory;
  std::vector<CrossingEvent> events;
  RunSummary summary;
};

/// Runs the scenario in memory: kicks, per-kick diagnostics, events and
/// summary. No files are touched.
ScenarioResult simulate(const Scenario& scenario);

RunSummary summarize(const KickTrajectory& trajectory, const std::vector<CrossingEvent>& events);

/// Scientific notation with 17 significant digits.
std::string format_double(double value);

void write_trajectory_csv(std::ostream& out, const KickTrajectory& trajectory);

/// Summary JSON text. With `include_timing` false, runtime_seconds is written
/// as 0 so the document depends only on the inputs.
std::string summary_json(const Scenario& scenario, const RunSummary& summary, bool include_timing);

/// Filesystem or stream failure while writing outputs.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path output_dir = ".";
  bool include_timing = true;
  /// Worker threads for sweeps; 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct RunOutputs {
  std::filesystem::path csv;
  std::filesystem::path summary;
  RunSummary stats;
};

RunOutputs run_scenario(const Scenario& scenario, const RunOptions& options);

struct ConvergenceEntry {
  std::string from_value;
  std::string to_value;
  /// max over common kicks and |0,0>, |0,1>, |1,0>, |1,1> of |P_from - P_to|
  double max_probability_difference = 0.0;
};

struct SweepOutputs {
  std::vector<RunOutputs> runs;
  std::vector<ConvergenceEntry> convergence;
  std::filesystem::path aggregate;  ///< empty when no values were given
};

/// Runs `base` once per value of the numeric config `key`. Runs execute on
/// up to options.workers threads; each output file has exactly one writer.
/// Throws ConfigError if key is not numeric or a value does not parse,
/// std::invalid_argument on duplicate values.
SweepOutputs run_sweep(const Scenario& base, std::string_view key, std::span<const std::string> values,
                       const RunOptions& options);

/// Filename-safe rendering of a sweep value ("0.04" -> "0p04", "-1" -> "m1").
std::string sweep_value_tag(double value);

}  // namespace nqs
