#include "nqs/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nqs/propagator.hpp"

namespace nqs {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const Scenario& s) {
  ordered_json cfg;
  cfg["chi_a"] = s.cfg.chi_a;
  cfg["chi_b"] = s.cfg.chi_b;
  cfg["chi_ab"] = s.cfg.chi_ab;
  cfg["epsilon_re"] = s.cfg.epsilon.real();
  cfg["epsilon_im"] = s.cfg.epsilon.imag();
  cfg["alpha_re"] = s.cfg.alpha.real();
  cfg["alpha_im"] = s.cfg.alpha.imag();
  cfg["T"] = s.cfg.period;
  cfg["dim_a"] = s.cfg.dim_a;
  cfg["dim_b"] = s.cfg.dim_b;
  cfg["n_kicks"] = s.cfg.n_kicks;
  cfg["tracked"] = format_tracked(s.tracked_set());
  cfg["initial_state"] = s.initial.to_string();
  cfg["event_tol"] = s.event_tol;
  return cfg;
}

ordered_json summary_object(const Scenario& scenario, const RunSummary& summary, bool include_timing) {
  ordered_json j;
  j["scenario"] = scenario.name;
  j["config"] = config_json(scenario);
  j["max_leakage"] = summary.max_leakage;
  j["mean_leakage"] = summary.mean_leakage;
  j["max_fid_b1"] = summary.max_fid_b1;
  j["max_fid_b2"] = summary.max_fid_b2;
  j["bell_event_count"] = summary.bell_event_count;
  j["separable_event_count"] = summary.separable_event_count;
  j["max_norm_error"] = summary.max_norm_error;
  j["runtime_seconds"] = include_timing ? summary.runtime_seconds : 0.0;
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw OutputError("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.close();
  if (!out) {
    throw OutputError("failed writing " + path.string());
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

double numeric_setting(const Scenario& s, std::string_view key) {
  if (key == "chi_a") return s.cfg.chi_a;
  if (key == "chi_b") return s.cfg.chi_b;
  if (key == "chi_ab") return s.cfg.chi_ab;
  if (key == "epsilon_re") return s.cfg.epsilon.real();
  if (key == "epsilon_im") return s.cfg.epsilon.imag();
  if (key == "alpha_re") return s.cfg.alpha.real();
  if (key == "alpha_im") return s.cfg.alpha.imag();
  if (key == "T") return s.cfg.period;
  if (key == "dim_a") return s.cfg.dim_a;
  if (key == "dim_b") return s.cfg.dim_b;
  if (key == "n_kicks") return s.cfg.n_kicks;
  if (key == "event_tol") return s.event_tol;
  throw std::invalid_argument("not a numeric key: " + std::string(key));
}

double max_probability_difference(const KickTrajectory& lhs, const KickTrajectory& rhs) {
  const std::size_t n = std::min(lhs.records.size(), rhs.records.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const KickRecord& x = lhs.records[k];
    const KickRecord& y = rhs.records[k];
    worst = std::max({worst, std::abs(x.p00 - y.p00), std::abs(x.p01 - y.p01), std::abs(x.p10 - y.p10),
                      std::abs(x.p11 - y.p11)});
  }
  return worst;
}

}  // namespace

ScenarioResult simulate(const Scenario& scenario) {
  scenario.validate();
  const auto start = std::chrono::steady_clock::now();

  const FockBasis basis = scenario.cfg.basis();
  const Propagators props = build_propagators(scenario.cfg, basis);
  const StateVector psi0 = scenario.initial.build(basis);

  ScenarioResult result;
  result.trajectory.tracked = scenario.tracked_set();
  result.trajectory.records.reserve(static_cast<std::size_t>(scenario.cfg.n_kicks) + 1);
  propagate_kicks(props, psi0, scenario.cfg.n_kicks, [&](int k, const StateVector& psi) {
    result.trajectory.records.push_back(record_kick(k, scenario.cfg.period, psi, result.trajectory.tracked));
  });
  result.events = detect_events(result.trajectory, scenario.event_tol);
  result.summary = summarize(result.trajectory, result.events);
  result.summary.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunSummary summarize(const KickTrajectory& trajectory, const std::vector<CrossingEvent>& events) {
  RunSummary s;
  if (trajectory.records.empty()) {
    return s;
  }
  s.max_leakage = trajectory.records.front().leakage;
  double total_leakage = 0.0;
  for (const auto& r : trajectory.records) {
    s.max_leakage = std::max(s.max_leakage, r.leakage);
    total_leakage += r.leakage;
    s.max_fid_b1 = std::max(s.max_fid_b1, r.fid_b1);
    s.max_fid_b2 = std::max(s.max_fid_b2, r.fid_b2);
    s.max_norm_error = std::max(s.max_norm_error, r.norm_error);
  }
  s.mean_leakage = total_leakage / static_cast<double>(trajectory.records.size());
  s.bell_event_count = count_events(events, EventKind::bell);
  s.separable_event_count = count_events(events, EventKind::separable);
  return s;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const KickTrajectory& trajectory) {
  out << kCsvHeader << '\n';
  for (const auto& r : trajectory.records) {
    out << r.kick << ',' << format_double(r.time) << ',' << format_double(r.p00) << ','
        << format_double(r.p01) << ',' << format_double(r.p10) << ',' << format_double(r.p11) << ','
        << format_double(r.leakage) << ',' << format_double(r.fid_b1) << ',' << format_double(r.fid_b2)
        << ',' << format_double(r.entropy) << ',' << format_double(r.norm_error) << '\n';
  }
}

std::string summary_json(const Scenario& scenario, const RunSummary& summary, bool include_timing) {
  return summary_object(scenario, summary, include_timing).dump(2) + "\n";
}

namespace {

RunOutputs write_run(const Scenario& scenario, const ScenarioResult& result, const RunOptions& options) {
  RunOutputs outputs;
  outputs.csv = options.output_dir / (scenario.name + ".csv");
  outputs.summary = options.output_dir / (scenario.name + "_summary.json");
  outputs.stats = result.summary;

  std::ostringstream csv;
  write_trajectory_csv(csv, result.trajectory);
  write_text_file(outputs.csv, csv.str());
  write_text_file(outputs.summary, summary_json(scenario, result.summary, options.include_timing));
  return outputs;
}

}  // namespace

RunOutputs run_scenario(const Scenario& scenario, const RunOptions& options) {
  const ScenarioResult result = simulate(scenario);
  ensure_directory(options.output_dir);
  return write_run(scenario, result, options);
}

std::string sweep_value_tag(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  std::string tag;
  for (const char* c = buf; c != ptr; ++c) {
    switch (*c) {
      case '.': tag += 'p'; break;
      case '-': tag += 'm'; break;
      case '+': break;
      default: tag += *c;
    }
  }
  return tag;
}

SweepOutputs run_sweep(const Scenario& base, std::string_view key, std::span<const std::string> values,
                       const RunOptions& options) {
  if (!is_numeric_key(key)) {
    throw ConfigError(std::string(key), "sweep", "not a numeric config key");
  }
  SweepOutputs outputs;
  if (values.empty()) {
    return outputs;
  }

  std::vector<Scenario> scenarios;
  std::vector<std::string> tags;
  std::set<std::string> seen;
  for (const auto& value : values) {
    Scenario s = base;
    apply_setting(s, {std::string(key), value, "sweep value '" + value + "'"});
    const std::string tag = sweep_value_tag(numeric_setting(s, key));
    if (!seen.insert(tag).second) {
      throw std::invalid_argument("run_sweep: duplicate value " + value);
    }
    s.name = base.name + "_" + std::string(key) + "_" + tag;
    try {
      s.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string(key), "sweep value '" + value + "'", e.what());
    }
    scenarios.push_back(std::move(s));
    tags.push_back(tag);
  }

  ensure_directory(options.output_dir);

  const std::size_t n = scenarios.size();
  std::vector<ScenarioResult> results(n);
  outputs.runs.resize(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = simulate(scenarios[i]);
        outputs.runs[i] = write_run(scenarios[i], results[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  for (std::size_t i = 1; i < n; ++i) {
    outputs.convergence.push_back(
        {tags[i - 1], tags[i], max_probability_difference(results[i - 1].trajectory, results[i].trajectory)});
  }

  ordered_json aggregate;
  aggregate["scenario"] = base.name;
  aggregate["key"] = std::string(key);
  aggregate["values"] = ordered_json::array();
  aggregate["runs"] = ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) {
    aggregate["values"].push_back(numeric_setting(scenarios[i], key));
    ordered_json run = summary_object(scenarios[i], results[i].summary, options.include_timing);
    run["csv"] = outputs.runs[i].csv.filename().string();
    aggregate["runs"].push_back(std::move(run));
  }
  aggregate["convergence"] = ordered_json::array();
  for (const auto& c : outputs.convergence) {
    aggregate["convergence"].push_back(
        {{"from", c.from_value}, {"to", c.to_value}, {"max_probability_difference", c.max_probability_difference}});
  }
  outputs.aggregate = options.output_dir / (base.name + "_sweep_" + std::string(key) + ".json");
  write_text_file(outputs.aggregate, aggregate.dump(2) + "\n");
  return outputs;
}

}  // namespace nqs
