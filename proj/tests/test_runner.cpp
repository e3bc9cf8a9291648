#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nqs/runner.hpp"

namespace nqs {
namespace {

namespace fs = std::filesystem;

class RunnerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("nqs_runner_" + std::string(info->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
  }

  RunOptions options() const {
    RunOptions o;
    o.output_dir = dir_;
    o.include_timing = false;
    return o;
  }

  fs::path dir_;
};

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_double(0.0), "0.0000000000000000e+00");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(SweepValueTag, FilenameSafe) {
  EXPECT_EQ(sweep_value_tag(0.04), "0p04");
  EXPECT_EQ(sweep_value_tag(-1.0), "m1");
  EXPECT_EQ(sweep_value_tag(10.0), "10");
}

TEST_F(RunnerTest, CsvHasHeaderAndOneRowPerKick) {
  Scenario s = preset("fig1");
  s.cfg.n_kicks = 1000;
  const RunOutputs out = run_scenario(s, options());
  const auto rows = lines(slurp(out.csv));
  ASSERT_EQ(rows.size(), 1002u);
  EXPECT_EQ(rows.front(), kCsvHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream row(rows[i]);
    std::vector<std::string> cells;
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 11u);
    EXPECT_EQ(std::stoi(cells[0]), static_cast<int>(i - 1));
    for (int c = 2; c <= 5; ++c) {
      const double p = std::stod(cells[c]);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST_F(RunnerTest, SummaryJsonFields) {
  const RunOutputs out = run_scenario(preset("fig1"), options());
  const auto j = nlohmann::json::parse(slurp(out.summary));
  for (const char* field : {"scenario", "config", "max_leakage", "mean_leakage", "max_fid_b1", "max_fid_b2",
                            "bell_event_count", "separable_event_count", "max_norm_error", "runtime_seconds"}) {
    EXPECT_TRUE(j.contains(field)) << field;
  }
  EXPECT_EQ(j["scenario"], "fig1");
  EXPECT_EQ(j["config"]["chi_ab"], 1.0);
  EXPECT_EQ(j["config"]["tracked"], "0:0,0:1,1:0");
  EXPECT_EQ(j["runtime_seconds"], 0.0);
  const double max_leakage = j["max_leakage"];
  EXPECT_GT(max_leakage, 1e-5);
  EXPECT_LT(max_leakage, 1e-3);
}

TEST_F(RunnerTest, Fig3HasNoBellEvents) {
  const RunOutputs out = run_scenario(preset("fig3"), options());
  EXPECT_EQ(out.stats.bell_event_count, 0u);
  const auto j = nlohmann::json::parse(slurp(out.summary));
  EXPECT_EQ(j["bell_event_count"], 0);
}

TEST_F(RunnerTest, RepeatedRunsAreByteIdentical) {
  const Scenario s = preset("fig1");
  RunOptions first = options();
  first.output_dir = dir_ / "a";
  RunOptions second = options();
  second.output_dir = dir_ / "b";
  const RunOutputs a = run_scenario(s, first);
  const RunOutputs b = run_scenario(s, second);
  EXPECT_EQ(slurp(a.csv), slurp(b.csv));
  EXPECT_EQ(slurp(a.summary), slurp(b.summary));
}

TEST_F(RunnerTest, TimingIsRecordedWhenRequested) {
  RunOptions o = options();
  o.include_timing = true;
  Scenario s = preset("fig1");
  s.cfg.n_kicks = 10;
  const RunOutputs out = run_scenario(s, o);
  const auto j = nlohmann::json::parse(slurp(out.summary));
  EXPECT_GT(j["runtime_seconds"].get<double>(), 0.0);
}

TEST_F(RunnerTest, EmptySweepWritesNothing) {
  const SweepOutputs out = run_sweep(preset("fig1"), "chi_ab", {}, options());
  EXPECT_TRUE(out.runs.empty());
  EXPECT_TRUE(out.aggregate.empty());
  EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(RunnerTest, SweepCrossCouplingReproducesBothRegimes) {
  const std::vector<std::string> values{"0", "1"};
  RunOptions o = options();
  o.workers = 2;
  const SweepOutputs out = run_sweep(preset("fig1"), "chi_ab", values, o);
  ASSERT_EQ(out.runs.size(), 2u);
  EXPECT_EQ(out.runs[0].csv.filename(), "fig1_chi_ab_0.csv");
  EXPECT_EQ(out.runs[1].csv.filename(), "fig1_chi_ab_1.csv");
  // chi_ab = 0 tracks four states and never forms the |0,1>/|1,0> Bell crossing.
  EXPECT_EQ(out.runs[0].stats.bell_event_count, 0u);
  EXPECT_LT(out.runs[0].stats.max_leakage, 2e-3);
  EXPECT_GT(out.runs[1].stats.bell_event_count, 0u);

  // Outputs match an individual run of the same scenario.
  Scenario fig3_like = preset("fig1");
  fig3_like.cfg.chi_ab = 0.0;
  fig3_like.name = "single";
  const RunOutputs single = run_scenario(fig3_like, options());
  EXPECT_EQ(slurp(single.csv), slurp(out.runs[0].csv));

  const auto agg = nlohmann::json::parse(slurp(out.aggregate));
  EXPECT_EQ(agg["key"], "chi_ab");
  EXPECT_EQ(agg["runs"].size(), 2u);
  EXPECT_EQ(agg["runs"][0]["config"]["tracked"], "0:0,0:1,1:0,1:1");
  EXPECT_EQ(agg["convergence"].size(), 1u);
}

TEST_F(RunnerTest, SweepDimensionReportsConvergence) {
  const std::vector<std::string> values{"10", "14"};
  const SweepOutputs out = run_sweep(preset("fig1"), "dim_a", values, options());
  ASSERT_EQ(out.convergence.size(), 1u);
  EXPECT_EQ(out.convergence[0].from_value, "10");
  EXPECT_EQ(out.convergence[0].to_value, "14");
  EXPECT_LT(out.convergence[0].max_probability_difference, 1e-6);
}

TEST_F(RunnerTest, SweepRejectsBadInput) {
  const std::vector<std::string> values{"1"};
  EXPECT_THROW(run_sweep(preset("fig1"), "tracked", values, options()), ConfigError);
  EXPECT_THROW(run_sweep(preset("fig1"), "bogus", values, options()), ConfigError);
  const std::vector<std::string> bad{"x"};
  EXPECT_THROW(run_sweep(preset("fig1"), "chi_ab", bad, options()), ConfigError);
  const std::vector<std::string> dup{"1", "1.0"};
  EXPECT_THROW(run_sweep(preset("fig1"), "chi_ab", dup, options()), std::invalid_argument);
  const std::vector<std::string> invalid{"1"};
  EXPECT_THROW(run_sweep(preset("fig1"), "dim_b", invalid, options()), ConfigError);
}

TEST_F(RunnerTest, SweepOutputsAreDeterministicAcrossWorkerCounts) {
  const std::vector<std::string> values{"0.02", "0.04", "0.06"};
  Scenario base = preset("fig1");
  base.cfg.n_kicks = 200;
  RunOptions serial = options();
  serial.output_dir = dir_ / "serial";
  serial.workers = 1;
  RunOptions parallel = options();
  parallel.output_dir = dir_ / "parallel";
  parallel.workers = 3;
  const SweepOutputs a = run_sweep(base, "alpha_re", values, serial);
  const SweepOutputs b = run_sweep(base, "alpha_re", values, parallel);
  ASSERT_EQ(a.runs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(slurp(a.runs[i].csv), slurp(b.runs[i].csv));
  }
  EXPECT_EQ(slurp(a.aggregate), slurp(b.aggregate));
}

TEST_F(RunnerTest, UnwritableOutputDirectoryThrows) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "blocker") << "x";
  RunOptions o = options();
  o.output_dir = dir_ / "blocker" / "sub";
  Scenario s = preset("fig1");
  s.cfg.n_kicks = 2;
  EXPECT_THROW(run_scenario(s, o), OutputError);
}

}  // namespace
}  // namespace nqs
