#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarmforage/engine.hpp"

namespace swarmforage {

enum class Level { Low, Medium, High };

// Low 30%, Medium 60%, High 90%.
double probability(Level level) noexcept;
// "low" / "medium" / "high" (any case) or a number in [0, 1].
std::optional<double> parse_probability(std::string_view text);

struct ExperimentSpec {
  std::string name;
  double beta_send = 0.0;
  double beta_receive = 0.0;
  Controller controller = Controller::Utility;
  int replicates = 10;
  SimConfig base;
  std::uint64_t seed_base = 1;

  // Replicate i runs with seed seed_base + i.
  SimConfig config_for(int replicate) const;
};

// Experiments 1-9 (every send/receive level pair), then RCS at High/High,
// then CRW.
std::vector<ExperimentSpec> default_suite(const SimConfig& base, int replicates, std::uint64_t seed_base);

SimConfig desk_scale_config();
SimConfig paper_scale_config();

struct AggregateResult {
  std::string experiment;
  Controller controller = Controller::Utility;
  double beta_send = 0.0;
  double beta_receive = 0.0;
  int replicates = 0;
  std::uint64_t seed_base = 0;
  double mean_blocks = 0.0;
  double mean_inaccuracies = 0.0;
  double sd_blocks = 0.0;
  double sd_inaccuracies = 0.0;
  // performance(mean_blocks, mean_inaccuracies)
  double performance = 0.0;
  std::vector<RunMetrics> runs;
  // Non-empty when the experiment could not run.
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

AggregateResult aggregate(const ExperimentSpec& spec, std::vector<RunMetrics> runs);

// Runs every replicate of every spec on up to `threads` workers (0 = hardware
// concurrency) and reduces in (spec, replicate) order, so output does not
// depend on scheduling. A failing spec is reported in its row; the others
// still run.
std::vector<AggregateResult> run_matrix(std::span<const ExperimentSpec> suite, unsigned threads = 0);

enum class OutputFormat { Csv, Json, Table };

std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

// Shortest text that parses back to the same double; NaN is "NaN".
std::string format_number(double v);

void write_summary_csv(std::ostream& os, std::span<const AggregateResult> results);
void write_runs_csv(std::ostream& os, std::span<const AggregateResult> results);
void write_series_csv(std::ostream& os, std::span<const AggregateResult> results, int metrics_interval);
void write_json(std::ostream& os, std::span<const AggregateResult> results);
void write_table(std::ostream& os, std::span<const AggregateResult> results);

struct SummaryRow {
  std::string experiment;
  double beta_send = 0.0;
  double beta_receive = 0.0;
  std::string controller;
  double mean_blocks = 0.0;
  double mean_inaccuracies = 0.0;
  double performance = 0.0;
  int replicates = 0;
  std::uint64_t seed_base = 0;
};

std::vector<SummaryRow> parse_summary_csv(std::istream& is);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EmittedFiles {
  std::filesystem::path summary;
  std::filesystem::path runs;
  std::filesystem::path series;
};

// With an empty `out`, writes the summary in `format` to `console`. Otherwise
// writes the summary to `out` plus per-replicate and time-series CSVs next to
// it (<stem>_runs.csv, <stem>_series.csv).
EmittedFiles emit_results(std::span<const AggregateResult> results, OutputFormat format,
                          const std::filesystem::path& out, int metrics_interval, std::ostream& console);

}  // namespace swarmforage
