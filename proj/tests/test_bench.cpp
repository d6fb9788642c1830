#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swarmforage/bench.hpp"
#include "swarmforage/suite.hpp"

using namespace swarmforage;

namespace {

SimConfig short_base(int ticks = 200) {
  SimConfig cfg = desk_scale_config();
  cfg.ticks = ticks;
  cfg.metrics_interval = 50;
  return cfg;
}

std::string summary_csv(const std::vector<AggregateResult>& results) {
  std::ostringstream os;
  write_summary_csv(os, results);
  return os.str();
}

}  // namespace

TEST(Levels, Probabilities) {
  EXPECT_DOUBLE_EQ(probability(Level::Low), 0.30);
  EXPECT_DOUBLE_EQ(probability(Level::Medium), 0.60);
  EXPECT_DOUBLE_EQ(probability(Level::High), 0.90);
  EXPECT_EQ(parse_probability("HIGH"), 0.9);
  EXPECT_EQ(parse_probability("0.25"), 0.25);
  EXPECT_FALSE(parse_probability("1.5").has_value());
  EXPECT_FALSE(parse_probability("often").has_value());
}

TEST(DefaultSuite, ElevenRowsInOrder) {
  const auto suite = default_suite(desk_scale_config(), 10, 1);
  ASSERT_EQ(suite.size(), 11u);
  const double lv[] = {0.3, 0.6, 0.9};
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(suite[i].name, std::to_string(i + 1));
    EXPECT_EQ(suite[i].controller, Controller::Utility);
    EXPECT_DOUBLE_EQ(suite[i].beta_send, lv[i / 3]);
    EXPECT_DOUBLE_EQ(suite[i].beta_receive, lv[i % 3]);
  }
  EXPECT_EQ(suite[9].name, "RCS");
  EXPECT_EQ(suite[9].controller, Controller::RandomSelection);
  EXPECT_DOUBLE_EQ(suite[9].beta_send, 0.9);
  EXPECT_DOUBLE_EQ(suite[9].beta_receive, 0.9);
  EXPECT_EQ(suite[10].name, "CRW");
  EXPECT_EQ(suite[10].controller, Controller::RandomWalk);
}

TEST(ExperimentSpec, ReplicateSeeds) {
  ExperimentSpec spec{"x", 0.3, 0.6, Controller::RandomSelection, 3, desk_scale_config(), 100};
  const SimConfig c = spec.config_for(2);
  EXPECT_EQ(c.seed, 102u);
  EXPECT_EQ(c.controller, Controller::RandomSelection);
  EXPECT_DOUBLE_EQ(c.comm.beta_send, 0.3);
  EXPECT_EQ(c.comm.selection, Selection::Random);
}

TEST(Presets, Scales) {
  const SimConfig desk = desk_scale_config();
  EXPECT_EQ(desk.arena.width, 24);
  EXPECT_EQ(desk.arena.height, 12);
  EXPECT_EQ(desk.n_robots, 32);
  EXPECT_EQ(desk.arena.block_count, 24);
  EXPECT_EQ(desk.ticks, 5000);
  EXPECT_EQ(desk.metrics_interval, 1000);
  EXPECT_DOUBLE_EQ(desk.comm.radius, 2.0);
  EXPECT_DOUBLE_EQ(desk.pheromone.rho, 0.001);
  const SimConfig paper = paper_scale_config();
  EXPECT_EQ(paper.n_robots, 128);
  EXPECT_EQ(paper.arena.block_count, 75);
  EXPECT_NO_THROW(paper.validate());
  EXPECT_EQ(paper_scale_suite().replicates, 50);
}

TEST(Aggregate, SingleReplicateEqualsRun) {
  ExperimentSpec spec{"one", 0.6, 0.6, Controller::Utility, 1, short_base(), 7};
  const auto results = run_matrix(std::span(&spec, 1), 1);
  ASSERT_EQ(results.size(), 1u);
  const RunMetrics direct = run_simulation(spec.config_for(0));
  EXPECT_EQ(results[0].mean_blocks, static_cast<double>(direct.blocks_collected));
  EXPECT_EQ(results[0].mean_inaccuracies, static_cast<double>(direct.inaccuracies));
  EXPECT_EQ(results[0].performance, direct.performance);
  EXPECT_EQ(results[0].sd_blocks, 0.0);
}

TEST(Aggregate, MeansAndSampleSd) {
  ExperimentSpec spec{"a", 0, 0, Controller::Utility, 3, short_base(), 1};
  std::vector<RunMetrics> runs(3);
  runs[0].blocks_collected = 10;
  runs[1].blocks_collected = 20;
  runs[2].blocks_collected = 30;
  runs[0].inaccuracies = 4;
  runs[1].inaccuracies = 4;
  runs[2].inaccuracies = 7;
  const auto r = aggregate(spec, runs);
  EXPECT_DOUBLE_EQ(r.mean_blocks, 20.0);
  EXPECT_DOUBLE_EQ(r.mean_inaccuracies, 5.0);
  EXPECT_DOUBLE_EQ(r.sd_blocks, 10.0);
  EXPECT_DOUBLE_EQ(r.sd_inaccuracies, std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(r.performance, 4.0);
}

TEST(RunMatrix, BadSpecDoesNotAbortOthers) {
  std::vector<ExperimentSpec> suite = default_suite(short_base(), 1, 1);
  suite[3].base.ticks = 0;
  const auto results = run_matrix(suite, 2);
  ASSERT_EQ(results.size(), 11u);
  EXPECT_FALSE(results[3].ok());
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i != 3) {
      EXPECT_TRUE(results[i].ok()) << results[i].error;
    }
  }
  EXPECT_TRUE(std::isnan(results[10].performance));
}

TEST(RunMatrix, ThreadCountDoesNotChangeBytes) {
  const auto suite = default_suite(short_base(), 2, 11);
  const auto a = summary_csv(run_matrix(suite, 1));
  const auto b = summary_csv(run_matrix(suite, 3));
  EXPECT_EQ(a, b);
}

TEST(Emit, CsvHeaderNaNAndRoundTrip) {
  const auto results = run_matrix(default_suite(short_base(), 2, 1), 1);
  const std::string csv = summary_csv(results);
  std::istringstream in(csv);
  const auto rows = parse_summary_csv(in);
  ASSERT_EQ(rows.size(), results.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].experiment, results[i].experiment);
    EXPECT_EQ(rows[i].beta_send, results[i].beta_send);
    EXPECT_EQ(rows[i].mean_blocks, results[i].mean_blocks);
    EXPECT_EQ(rows[i].mean_inaccuracies, results[i].mean_inaccuracies);
    EXPECT_EQ(rows[i].replicates, results[i].replicates);
    EXPECT_EQ(rows[i].seed_base, results[i].seed_base);
    // Every performance value equals B / I recomputed from the parsed means.
    const double recomputed = rows[i].mean_inaccuracies > 0 ? rows[i].mean_blocks / rows[i].mean_inaccuracies : NAN;
    if (std::isnan(recomputed)) {
      EXPECT_TRUE(std::isnan(rows[i].performance));
    } else {
      EXPECT_EQ(rows[i].performance, recomputed);
    }
  }
  EXPECT_NE(csv.find("\nCRW,0,0,crw,"), std::string::npos);
  EXPECT_EQ(csv.substr(csv.rfind(",NaN,")), ",NaN,2,1\n");
}

TEST(Emit, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(NAN), "NaN");
  const double x = 2.0 / 3.0;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Emit, TableIsFixedWidthInColumnOrder) {
  const auto results = run_matrix(default_suite(short_base(), 1, 1), 1);
  std::ostringstream os;
  write_table(os, results);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  const char* cols[] = {"experiment", "beta_send", "beta_receive", "controller", "mean_blocks", "mean_inaccuracies",
                        "performance", "replicates", "seed_base"};
  std::size_t pos = 0;
  for (const char* c : cols) {
    const auto at = header.find(c, pos);
    ASSERT_NE(at, std::string::npos) << c;
    pos = at;
  }
  std::string line;
  while (std::getline(in, line)) EXPECT_EQ(line.size(), header.size());
}

TEST(Emit, WritesThreeFilesAndReportsBadPath) {
  const auto results = run_matrix(default_suite(short_base(), 1, 1), 1);
  const auto dir = std::filesystem::temp_directory_path() / "swarmforage_emit_test";
  std::filesystem::remove_all(dir);
  std::ostringstream console;
  const auto files = emit_results(results, OutputFormat::Csv, dir / "out.csv", 50, console);
  EXPECT_TRUE(std::filesystem::exists(files.summary));
  EXPECT_TRUE(std::filesystem::exists(files.runs));
  EXPECT_TRUE(std::filesystem::exists(files.series));
  std::ifstream series(files.series);
  std::string line;
  int lines = 0;
  while (std::getline(series, line)) ++lines;
  EXPECT_EQ(lines, 1 + 11 * (200 / 50));
  EXPECT_TRUE(console.str().empty());

  std::ofstream(dir / "blocker") << "x";
  try {
    emit_results(results, OutputFormat::Csv, dir / "blocker" / "out.csv", 50, console);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Suite, ParsesFullSchema) {
  const Suite s = parse_suite(R"(
replicates: 4
seed_base: 77
threads: 2
simulation:
  n_robots: 10
  ticks: 300
  metrics_interval: 100
  rho: 0.01
  decay_form: literal
  empty_observation: reset
  comm_radius: 3
arena:
  width: 30
  height: 10
  nest: [0, 0, 3, 10]
  source: {x: 25, y: 0, width: 5, height: 10}
  blocks: 12
  sense_radius: 1
experiments:
  - name: a
    beta_send: low
    beta_receive: 0.5
  - name: b
    controller: rcs
  - name: c
    controller: crw
)");
  EXPECT_EQ(s.replicates, 4);
  EXPECT_EQ(s.seed_base, 77u);
  EXPECT_EQ(s.threads, 2u);
  EXPECT_EQ(s.base.n_robots, 10);
  EXPECT_EQ(s.base.pheromone.form, DecayForm::Literal);
  EXPECT_EQ(s.base.pheromone.empty, EmptyObservation::Reset);
  EXPECT_DOUBLE_EQ(s.base.comm.radius, 3.0);
  EXPECT_EQ(s.base.arena.nest, (Rect{0, 0, 3, 10}));
  EXPECT_EQ(s.base.arena.source, (Rect{25, 0, 5, 10}));
  const auto specs = s.expand();
  ASSERT_EQ(specs.size(), 3u);
  EXPECT_DOUBLE_EQ(specs[0].beta_send, 0.3);
  EXPECT_DOUBLE_EQ(specs[0].beta_receive, 0.5);
  EXPECT_DOUBLE_EQ(specs[1].beta_send, 0.9);
  EXPECT_DOUBLE_EQ(specs[2].beta_send, 0.0);
  EXPECT_EQ(specs[2].seed_base, 77u);
}

TEST(Suite, EmptyFileIsDefaultSuite) {
  const Suite s = parse_suite("");
  EXPECT_EQ(s.expand().size(), 11u);
  EXPECT_EQ(parse_suite("", true).base.n_robots, 128);
  EXPECT_EQ(parse_suite("preset: paper\nreplicates: 5\n").replicates, 5);
}

TEST(Suite, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_suite("replicate: 3\n"), ConfigError);
  EXPECT_THROW(parse_suite("simulation: {tick: 3}\n"), ConfigError);
  EXPECT_THROW(parse_suite("replicates: many\n"), ConfigError);
  EXPECT_THROW(parse_suite("simulation: {decay_form: fast}\n"), ConfigError);
  EXPECT_THROW(parse_suite("arena: {nest: [1, 2]}\n"), ConfigError);
  EXPECT_THROW(parse_suite("experiments: [{name: a}, {name: a}]\n"), ConfigError);
  EXPECT_THROW(parse_suite("experiments: [{name: a, beta_send: 2}]\n"), ConfigError);
  EXPECT_THROW(parse_suite("replicates: 0\n"), ConfigError);
  EXPECT_THROW(parse_suite("[unclosed\n"), ConfigError);
}

TEST(Suite, ShippedConfigsLoad) {
  const std::filesystem::path root = SWARMFORAGE_SOURCE_DIR;
  EXPECT_EQ(load_suite(root / "configs" / "default.yaml").expand().size(), 11u);
  EXPECT_EQ(load_suite(root / "configs" / "small.yaml").expand().size(), 3u);
  EXPECT_THROW(load_suite(root / "configs" / "missing.yaml"), IoError);
}
