#include "swarmforage/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace swarmforage {

double probability(Level level) noexcept {
  switch (level) {
    case Level::Low:
      return 0.30;
    case Level::Medium:
      return 0.60;
    case Level::High:
      return 0.90;
  }
  return 0.0;
}

std::optional<double> parse_probability(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "low") return probability(Level::Low);
  if (lower == "medium") return probability(Level::Medium);
  if (lower == "high") return probability(Level::High);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(lower.data(), lower.data() + lower.size(), v);
  if (ec != std::errc{} || ptr != lower.data() + lower.size() || !(v >= 0.0 && v <= 1.0)) return std::nullopt;
  return v;
}

SimConfig ExperimentSpec::config_for(int replicate) const {
  SimConfig cfg = base;
  cfg.controller = controller;
  cfg.comm.beta_send = beta_send;
  cfg.comm.beta_receive = beta_receive;
  cfg.comm.selection = controller == Controller::RandomSelection ? Selection::Random : Selection::Utility;
  cfg.seed = seed_base + static_cast<std::uint64_t>(replicate);
  return cfg;
}

std::vector<ExperimentSpec> default_suite(const SimConfig& base, int replicates, std::uint64_t seed_base) {
  std::vector<ExperimentSpec> suite;
  constexpr Level kLevels[] = {Level::Low, Level::Medium, Level::High};
  int n = 1;
  for (const Level send : kLevels) {
    for (const Level receive : kLevels) {
      suite.push_back({std::to_string(n++), probability(send), probability(receive), Controller::Utility, replicates,
                       base, seed_base});
    }
  }
  const double high = probability(Level::High);
  suite.push_back({"RCS", high, high, Controller::RandomSelection, replicates, base, seed_base});
  suite.push_back({"CRW", 0.0, 0.0, Controller::RandomWalk, replicates, base, seed_base});
  return suite;
}

SimConfig desk_scale_config() { return SimConfig{}; }

SimConfig paper_scale_config() {
  SimConfig cfg;
  cfg.arena.width = 64;
  cfg.arena.height = 32;
  cfg.arena.nest = {0, 0, 2, 32};
  cfg.arena.source = {56, 0, 8, 32};
  cfg.arena.block_count = 75;
  cfg.n_robots = 128;
  return cfg;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (const double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

AggregateResult header_for(const ExperimentSpec& spec) {
  AggregateResult r;
  r.experiment = spec.name;
  r.controller = spec.controller;
  r.beta_send = spec.beta_send;
  r.beta_receive = spec.beta_receive;
  r.replicates = spec.replicates;
  r.seed_base = spec.seed_base;
  return r;
}

}  // namespace

AggregateResult aggregate(const ExperimentSpec& spec, std::vector<RunMetrics> runs) {
  AggregateResult r = header_for(spec);
  std::vector<double> blocks;
  std::vector<double> wrong;
  for (const RunMetrics& m : runs) {
    blocks.push_back(static_cast<double>(m.blocks_collected));
    wrong.push_back(static_cast<double>(m.inaccuracies));
  }
  r.mean_blocks = mean_of(blocks);
  r.mean_inaccuracies = mean_of(wrong);
  r.sd_blocks = sample_sd(blocks, r.mean_blocks);
  r.sd_inaccuracies = sample_sd(wrong, r.mean_inaccuracies);
  r.performance = performance(r.mean_blocks, r.mean_inaccuracies);
  r.runs = std::move(runs);
  return r;
}

std::vector<AggregateResult> run_matrix(std::span<const ExperimentSpec> suite, unsigned threads) {
  struct Job {
    std::size_t spec;
    int replicate;
  };
  std::vector<std::string> errors(suite.size());
  std::vector<std::vector<RunMetrics>> metrics(suite.size());
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < suite.size(); ++s) {
    try {
      if (suite[s].replicates <= 0) throw ConfigError("replicates must be positive");
      suite[s].config_for(0).validate();
    } catch (const std::exception& e) {
      errors[s] = e.what();
      continue;
    }
    metrics[s].resize(static_cast<std::size_t>(suite[s].replicates));
    for (int i = 0; i < suite[s].replicates; ++i) jobs.push_back({s, i});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job job = jobs[j];
      try {
        metrics[job.spec][static_cast<std::size_t>(job.replicate)] =
            run_simulation(suite[job.spec].config_for(job.replicate));
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (errors[job.spec].empty()) errors[job.spec] = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<AggregateResult> results;
  results.reserve(suite.size());
  for (std::size_t s = 0; s < suite.size(); ++s) {
    if (!errors[s].empty()) {
      AggregateResult r = header_for(suite[s]);
      r.error = errors[s];
      r.mean_blocks = r.mean_inaccuracies = r.performance = std::nan("");
      results.push_back(std::move(r));
    } else {
      results.push_back(aggregate(suite[s], std::move(metrics[s])));
    }
  }
  return results;
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "table") return OutputFormat::Table;
  return std::nullopt;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("NaN");
}

namespace {

constexpr const char* kSummaryHeader =
    "experiment,beta_send,beta_receive,controller,mean_blocks,mean_inaccuracies,performance,replicates,seed_base";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

nlohmann::json number_or_nan(double v) {
  if (std::isnan(v)) return "NaN";
  return v;
}

}  // namespace

void write_summary_csv(std::ostream& os, std::span<const AggregateResult> results) {
  os << kSummaryHeader << '\n';
  for (const AggregateResult& r : results) {
    os << r.experiment << ',' << format_number(r.beta_send) << ',' << format_number(r.beta_receive) << ','
       << to_string(r.controller) << ',' << format_number(r.mean_blocks) << ',' << format_number(r.mean_inaccuracies)
       << ',' << format_number(r.performance) << ',' << r.replicates << ',' << r.seed_base << '\n';
  }
}

void write_runs_csv(std::ostream& os, std::span<const AggregateResult> results) {
  os << "experiment,replicate,seed,blocks,inaccuracies,performance,packets_sent\n";
  for (const AggregateResult& r : results) {
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      const RunMetrics& m = r.runs[i];
      os << r.experiment << ',' << i << ',' << r.seed_base + i << ',' << m.blocks_collected << ',' << m.inaccuracies
         << ',' << format_number(m.performance) << ',' << m.packets_sent << '\n';
    }
  }
}

void write_series_csv(std::ostream& os, std::span<const AggregateResult> results, int metrics_interval) {
  os << "experiment,replicate,seed,tick,cumulative_inaccuracies\n";
  for (const AggregateResult& r : results) {
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      const auto& series = r.runs[i].inaccuracy_series;
      for (std::size_t k = 0; k < series.size(); ++k) {
        os << r.experiment << ',' << i << ',' << r.seed_base + i << ','
           << static_cast<std::uint64_t>(k + 1) * static_cast<std::uint64_t>(metrics_interval) << ',' << series[k]
           << '\n';
      }
    }
  }
}

void write_json(std::ostream& os, std::span<const AggregateResult> results) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const AggregateResult& r : results) {
    nlohmann::ordered_json row;
    row["experiment"] = r.experiment;
    row["beta_send"] = r.beta_send;
    row["beta_receive"] = r.beta_receive;
    row["controller"] = to_string(r.controller);
    row["mean_blocks"] = number_or_nan(r.mean_blocks);
    row["mean_inaccuracies"] = number_or_nan(r.mean_inaccuracies);
    row["performance"] = number_or_nan(r.performance);
    row["replicates"] = r.replicates;
    row["seed_base"] = r.seed_base;
    row["sd_blocks"] = r.sd_blocks;
    row["sd_inaccuracies"] = r.sd_inaccuracies;
    if (!r.ok()) row["error"] = r.error;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      const RunMetrics& m = r.runs[i];
      runs.push_back({{"seed", r.seed_base + i},
                      {"blocks", m.blocks_collected},
                      {"inaccuracies", m.inaccuracies},
                      {"performance", number_or_nan(m.performance)},
                      {"packets_sent", m.packets_sent},
                      {"inaccuracy_series", m.inaccuracy_series}});
    }
    row["runs"] = std::move(runs);
    doc.push_back(std::move(row));
  }
  os << doc.dump(2) << '\n';
}

void write_table(std::ostream& os, std::span<const AggregateResult> results) {
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %9s %12s %10s %12s %18s %12s %10s %10s\n", "experiment", "beta_send",
                "beta_receive", "controller", "mean_blocks", "mean_inaccuracies", "performance", "replicates",
                "seed_base");
  os << line;
  for (const AggregateResult& r : results) {
    const std::string perf = std::isnan(r.performance) ? "NaN" : [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.4f", r.performance);
      return std::string(b);
    }();
    std::snprintf(line, sizeof line, "%-10s %9.2f %12.2f %10s %12.2f %18.3f %12s %10d %10llu\n", r.experiment.c_str(),
                  r.beta_send, r.beta_receive, std::string(to_string(r.controller)).c_str(), r.mean_blocks,
                  r.mean_inaccuracies, perf.c_str(), r.replicates, static_cast<unsigned long long>(r.seed_base));
    os << line;
    if (!r.ok()) os << "  error: " << r.error << '\n';
  }
}

std::vector<SummaryRow> parse_summary_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSummaryHeader) throw std::invalid_argument("unexpected summary CSV header");
  std::vector<SummaryRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::invalid_argument("summary CSV row has " + std::to_string(f.size()) + " fields");
    SummaryRow row;
    row.experiment = f[0];
    row.beta_send = parse_double(f[1]);
    row.beta_receive = parse_double(f[2]);
    row.controller = f[3];
    row.mean_blocks = parse_double(f[4]);
    row.mean_inaccuracies = parse_double(f[5]);
    row.performance = parse_double(f[6]);
    row.replicates = std::stoi(f[7]);
    row.seed_base = std::stoull(f[8]);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

EmittedFiles emit_results(std::span<const AggregateResult> results, OutputFormat format,
                          const std::filesystem::path& out, int metrics_interval, std::ostream& console) {
  auto write_summary = [&](std::ostream& os) {
    switch (format) {
      case OutputFormat::Csv:
        write_summary_csv(os, results);
        break;
      case OutputFormat::Json:
        write_json(os, results);
        break;
      case OutputFormat::Table:
        write_table(os, results);
        break;
    }
  };

  EmittedFiles files;
  if (out.empty()) {
    write_summary(console);
    return files;
  }

  files.summary = out;
  const std::filesystem::path stem = out.parent_path() / out.stem();
  files.runs = stem.string() + "_runs.csv";
  files.series = stem.string() + "_series.csv";

  if (out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + out.parent_path().string() + "': " + ec.message());
  }

  auto summary = open_for_write(files.summary);
  write_summary(summary);
  finish(summary, files.summary);

  auto runs = open_for_write(files.runs);
  write_runs_csv(runs, results);
  finish(runs, files.runs);

  auto series = open_for_write(files.series);
  write_series_csv(series, results, metrics_interval);
  finish(series, files.series);
  return files;
}

}  // namespace swarmforage
