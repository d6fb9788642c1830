#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarmforage/bench.hpp"
#include "swarmforage/comm.hpp"
#include "swarmforage/suite.hpp"

namespace sf = swarmforage;

namespace {

struct RunArgs {
  std::string suite_file;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed_base;
  std::optional<int> replicates;
  std::optional<unsigned> threads;
  bool paper_scale = false;
};

sf::Suite load(const std::string& file, bool paper_scale) {
  if (file.empty()) return paper_scale ? sf::paper_scale_suite() : sf::desk_scale_suite();
  return sf::load_suite(file, paper_scale);
}

int cmd_run(const RunArgs& args) {
  sf::Suite suite = load(args.suite_file, args.paper_scale);
  if (args.seed_base) suite.seed_base = *args.seed_base;
  if (args.replicates) suite.replicates = *args.replicates;
  if (args.threads) suite.threads = *args.threads;
  if (suite.replicates <= 0) throw sf::ConfigError("replicates must be positive");
  const auto format = sf::parse_format(args.format);
  if (!format) throw sf::ConfigError("unknown format '" + args.format + "'");

  const auto results = sf::run_matrix(suite.expand(), suite.threads);
  const auto files = sf::emit_results(results, *format, args.out, suite.base.metrics_interval, std::cout);
  if (!files.summary.empty()) {
    std::cerr << "wrote " << files.summary.string() << ", " << files.runs.string() << ", " << files.series.string()
              << '\n';
  }
  int failed = 0;
  for (const auto& r : results) {
    if (!r.ok()) {
      std::cerr << "experiment " << r.experiment << " failed: " << r.error << '\n';
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}

struct DecodeArgs {
  std::string hex;
  double rho = 0.001;
  std::string decay_form = "rate";
  bool json = false;
};

int cmd_decode(const DecodeArgs& args) {
  const auto bytes = sf::parse_hex(args.hex);
  const sf::Packet p = sf::decode(bytes);
  sf::PheromoneParams params;
  params.rho = args.rho;
  params.form = args.decay_form == "literal" ? sf::DecayForm::Literal : sf::DecayForm::Rate;
  const double tau = sf::dequantize_pheromone(p.pheromone_q, params.ceiling());
  const char* state = sf::to_string(static_cast<sf::CellState>(p.state_code));
  if (args.json) {
    nlohmann::ordered_json j;
    j["x"] = p.x;
    j["y"] = p.y;
    j["state"] = state;
    j["state_code"] = p.state_code;
    j["reserved"] = p.reserved;
    j["entity_id"] = p.entity_id;
    j["pheromone_q"] = p.pheromone_q;
    j["pheromone"] = tau;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "x            " << int(p.x) << '\n'
              << "y            " << int(p.y) << '\n'
              << "state        " << state << " (" << int(p.state_code) << ")\n"
              << "reserved     " << int(p.reserved) << '\n'
              << "entity_id    " << int(p.entity_id) << '\n'
              << "pheromone_q  " << int(p.pheromone_q) << '\n'
              << "pheromone    " << sf::format_number(tau) << '\n';
  }
  return 0;
}

struct TraceArgs {
  std::string suite_file;
  std::string out;
  std::string controller = "utility";
  std::string beta_send = "medium";
  std::string beta_receive = "medium";
  std::uint64_t seed = 1;
  std::optional<int> ticks;
  bool paper_scale = false;
};

int cmd_trace(const TraceArgs& args) {
  const sf::Suite suite = load(args.suite_file, args.paper_scale);
  sf::SimConfig cfg = suite.base;
  const auto controller = sf::parse_controller(args.controller);
  if (!controller) throw sf::ConfigError("controller must be utility, rcs or crw");
  cfg.controller = *controller;
  const auto send = sf::parse_probability(args.beta_send);
  const auto receive = sf::parse_probability(args.beta_receive);
  if (!send || !receive) throw sf::ConfigError("betas must be low, medium, high or a number in [0, 1]");
  cfg.comm.beta_send = *send;
  cfg.comm.beta_receive = *receive;
  if (cfg.controller == sf::Controller::RandomWalk) cfg.comm.beta_send = cfg.comm.beta_receive = 0.0;
  cfg.seed = args.seed;
  if (args.ticks) cfg.ticks = *args.ticks;

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::trunc);
    if (!file) throw sf::IoError("cannot open '" + args.out + "' for writing");
  }
  std::ostream& os = args.out.empty() ? std::cout : file;

  const auto metrics = sf::run_simulation(cfg, [&os](const sf::TraceEvent& e) {
    nlohmann::ordered_json j;
    j["tick"] = e.tick;
    j["robot"] = e.robot;
    j["event"] = e.kind;
    if (e.kind != "respawn" && e.kind != "receive") {
      j["x"] = e.cell.x;
      j["y"] = e.cell.y;
    }
    j["value"] = e.value;
    os << j.dump() << '\n';
  });
  os.flush();
  if (!os) throw sf::IoError("failed writing trace to '" + (args.out.empty() ? "stdout" : args.out) + "'");
  std::cerr << "blocks " << metrics.blocks_collected << ", inaccuracies " << metrics.inaccuracies << ", performance "
            << sf::format_number(metrics.performance) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-world swarm foraging simulator with pheromone-weighted robot-to-robot messages"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment suite and emit aggregate results");
  run_cmd->add_option("suite", run.suite_file, "Suite YAML file (defaults to the built-in eleven-row suite)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--out", run.out,
                      "Summary output path; <stem>_runs.csv and <stem>_series.csv are written beside it. "
                      "Without it the summary goes to stdout");
  run_cmd->add_option("-f,--format", run.format, "Summary format")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  run_cmd->add_option("--seed-base", run.seed_base, "Seed of replicate 0; replicate i uses seed-base + i");
  run_cmd->add_option("--replicates", run.replicates, "Replicates per experiment")->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");
  run_cmd->add_flag("--paper-scale", run.paper_scale, "Start from the 128-robot, 75-block, 50-replicate preset");

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode-packet", "Decode a 6-byte packet given as hex");
  decode_cmd->add_option("hex", decode.hex, "Packet bytes, e.g. 0305020007ff or 03:05:02:00:07:ff")->required();
  decode_cmd->add_option("--rho", decode.rho, "Decay rate used to scale the pheromone byte")->capture_default_str();
  decode_cmd->add_option("--decay-form", decode.decay_form, "Decay form")
      ->check(CLI::IsMember({"rate", "literal"}))
      ->capture_default_str();
  decode_cmd->add_flag("--json", decode.json, "Print one JSON object");

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Run one simulation and log every event as JSON lines");
  trace_cmd->add_option("suite", trace.suite_file, "Suite YAML file supplying the base configuration")
      ->check(CLI::ExistingFile);
  trace_cmd->add_option("-o,--out", trace.out, "Event log path (stdout if omitted)");
  trace_cmd->add_option("--controller", trace.controller, "utility, rcs or crw")->capture_default_str();
  trace_cmd->add_option("--beta-send", trace.beta_send, "low, medium, high or a probability")->capture_default_str();
  trace_cmd->add_option("--beta-receive", trace.beta_receive, "low, medium, high or a probability")
      ->capture_default_str();
  trace_cmd->add_option("--seed", trace.seed, "Run seed")->capture_default_str();
  trace_cmd->add_option("--ticks", trace.ticks, "Override the tick count")->check(CLI::PositiveNumber);
  trace_cmd->add_flag("--paper-scale", trace.paper_scale, "Start from the paper-scale preset");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*decode_cmd) return cmd_decode(decode);
    if (*trace_cmd) return cmd_trace(trace);
  } catch (const sf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const sf::DecodeError& e) {
    std::cerr << "decode error: " << e.what() << '\n';
    return 2;
  } catch (const sf::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
