// nqsim: command-line front end for kicked Kerr coupler simulations.
//
//   nqsim run --preset fig1 --output-dir out
//   nqsim run --config my.cfg --chi_ab 0 --n_kicks 5000
//   nqsim sweep --preset fig1 --key chi_ab --values 0,1
//   nqsim presets [--show fig3]
//
// Exit status: 0 success, 1 usage or configuration error (including I/O),
// 2 numerical failure.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nqs/runner.hpp"
#include "nqs/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct ScenarioFlags {
  std::string preset;
  std::string config_path;
  std::string name;
  std::map<std::string, std::string> overrides;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("--preset", flags.preset, "Start from a built-in scenario")
      ->check(CLI::IsMember(nqs::preset_names()));
  cmd->add_option("--config", flags.config_path, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--name", flags.name, "Scenario name used for output files");
  for (const auto& key : nqs::config_keys()) {
    cmd->add_option("--" + key, flags.overrides[key], "Override config key " + key);
  }
}

nqs::Scenario resolve_scenario(const ScenarioFlags& flags, CLI::App* cmd) {
  std::optional<nqs::Scenario> base;
  if (!flags.preset.empty()) {
    base = nqs::preset(flags.preset);
  }
  std::vector<nqs::ConfigEntry> entries;
  if (!flags.config_path.empty()) {
    entries = nqs::read_config_file(flags.config_path);
  }
  // Flags are applied after the file, in canonical key order.
  for (const auto& key : nqs::config_keys()) {
    if (cmd->count("--" + key) > 0) {
      entries.push_back({key, flags.overrides.at(key), "--" + key});
    }
  }
  if (!base && entries.empty()) {
    throw nqs::ConfigError("", "command line", "give --preset, --config or explicit key flags");
  }
  nqs::Scenario scenario = nqs::build_scenario(base, entries);
  if (!flags.name.empty()) {
    scenario.name = flags.name;
  } else if (!base && !flags.config_path.empty()) {
    scenario.name = std::filesystem::path(flags.config_path).stem().string();
  }
  return scenario;
}

void print_summary(const std::string& label, const nqs::RunSummary& s) {
  std::cout << label << ": max_leakage=" << s.max_leakage << " max_fid_b1=" << s.max_fid_b1
            << " max_fid_b2=" << s.max_fid_b2 << " bell_events=" << s.bell_event_count
            << " separable_events=" << s.separable_event_count << " max_norm_error=" << s.max_norm_error
            << " runtime=" << s.runtime_seconds << "s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked two-mode Kerr coupler simulator"};
  app.require_subcommand(1);

  std::string output_dir = ".";
  bool no_timing = false;
  bool quiet = false;

  ScenarioFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario and write CSV + JSON summary");
  add_scenario_flags(run_cmd, run_flags);
  run_cmd->add_option("--output-dir", output_dir, "Directory for output files");
  run_cmd->add_flag("--no-timing", no_timing, "Write runtime_seconds as 0 for reproducible summaries");
  run_cmd->add_flag("-q,--quiet", quiet, "Suppress the summary line");

  ScenarioFlags sweep_flags;
  std::string sweep_key;
  std::vector<std::string> sweep_values;
  unsigned workers = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a scenario once per value of one numeric key");
  add_scenario_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--key", sweep_key, "Numeric config key to sweep")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->delimiter(',');
  sweep_cmd->add_option("--output-dir", output_dir, "Directory for output files");
  sweep_cmd->add_option("-j,--jobs", workers, "Worker threads (0 = hardware concurrency)");
  sweep_cmd->add_flag("--no-timing", no_timing, "Write runtime_seconds as 0 for reproducible summaries");
  sweep_cmd->add_flag("-q,--quiet", quiet, "Suppress per-run summary lines");

  std::string show_preset;
  CLI::App* presets_cmd = app.add_subcommand("presets", "List built-in scenarios");
  presets_cmd->add_option("--show", show_preset, "Print a preset in config-file form")
      ->check(CLI::IsMember(nqs::preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*presets_cmd) {
      if (!show_preset.empty()) {
        std::cout << nqs::format_config(nqs::preset(show_preset));
      } else {
        for (const auto& name : nqs::preset_names()) {
          std::cout << name << '\n';
        }
      }
      return kExitOk;
    }

    nqs::RunOptions options;
    options.output_dir = output_dir;
    options.include_timing = !no_timing;
    options.workers = workers;

    if (*run_cmd) {
      const nqs::Scenario scenario = resolve_scenario(run_flags, run_cmd);
      const nqs::RunOutputs out = nqs::run_scenario(scenario, options);
      if (!quiet) {
        print_summary(scenario.name, out.stats);
        std::cout << "wrote " << out.csv.string() << " and " << out.summary.string() << '\n';
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      const nqs::Scenario base = resolve_scenario(sweep_flags, sweep_cmd);
      const nqs::SweepOutputs out = nqs::run_sweep(base, sweep_key, sweep_values, options);
      if (!quiet) {
        for (const auto& run : out.runs) {
          print_summary(run.csv.stem().string(), run.stats);
        }
        for (const auto& c : out.convergence) {
          std::cout << "convergence " << c.from_value << " -> " << c.to_value
                    << ": max_probability_difference=" << c.max_probability_difference << '\n';
        }
        if (!out.aggregate.empty()) {
          std::cout << "wrote " << out.aggregate.string() << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const nqs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
