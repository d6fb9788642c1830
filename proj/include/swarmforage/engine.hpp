#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "swarmforage/agent.hpp"
#include "swarmforage/belief.hpp"
#include "swarmforage/comm.hpp"
#include "swarmforage/random.hpp"
#include "swarmforage/world.hpp"

namespace swarmforage {

struct SimConfig {
  ArenaConfig arena;
  int n_robots = 32;
  // Whole swarm runs one controller. The controller decides the cell
  // selection used for messages; comm.selection is not consulted.
  Controller controller = Controller::Utility;
  CommConfig comm;
  PheromoneParams pheromone;
  int ticks = 5000;
  int metrics_interval = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RunMetrics {
  std::uint64_t blocks_collected = 0;
  std::uint64_t inaccuracies = 0;
  // Cumulative inaccuracies after every metrics_interval ticks.
  std::vector<std::uint64_t> inaccuracy_series;
  // blocks / inaccuracies, NaN when no inaccuracy was recorded.
  double performance = 0.0;
  std::uint64_t packets_sent = 0;
};

// B / I, or NaN when I == 0.
double performance(double blocks, double inaccuracies) noexcept;

struct TraceEvent {
  int tick = 0;
  // -1 for world events.
  int robot = -1;
  std::string_view kind;
  CellCoord cell;
  std::int64_t value = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

// One simulation instance. Each tick runs, in robot-id order within each
// phase: pheromone decay, sensing (inaccuracy accounting, then observation),
// communication (last tick's inbox in, this tick's packet out), actions,
// block respawn and metric sampling.
class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);
  // Scripted setup; robots[i].id must equal i.
  Simulation(const SimConfig& cfg, Arena arena, std::vector<Robot> robots);

  void set_trace(TraceSink sink) { trace_ = std::move(sink); }

  void tick();
  void run();

  int ticks_run() const noexcept { return tick_; }
  const SimConfig& config() const noexcept { return cfg_; }
  const Arena& arena() const noexcept { return arena_; }
  std::span<const Robot> robots() const noexcept { return robots_; }
  Robot& robot(int id) { return robots_.at(static_cast<std::size_t>(id)); }
  std::span<const Envelope> inbox(int id) const { return inbox_.at(static_cast<std::size_t>(id)); }

  std::uint64_t inaccuracies() const noexcept { return inaccuracies_; }
  std::uint64_t packets_sent() const noexcept { return packets_sent_; }
  std::uint64_t blocks_spawned() const noexcept { return blocks_spawned_; }
  std::size_t blocks_carried() const noexcept;
  RunMetrics metrics() const;

 private:
  struct Setup {
    Rng world_rng;
    Arena arena;
    std::vector<Robot> robots;
  };
  static Setup random_setup(const SimConfig& cfg);
  Simulation(const SimConfig& cfg, Setup setup);

  void emit(int robot, std::string_view kind, CellCoord cell, std::int64_t value = 0);
  void sense_phase();
  void communicate_phase();
  void action_phase();

  SimConfig cfg_;
  Rng world_rng_;
  Arena arena_;
  std::vector<Robot> robots_;
  std::vector<Rng> comm_rng_;
  std::vector<Rng> motion_rng_;
  std::vector<std::vector<Envelope>> inbox_;
  std::vector<std::vector<Envelope>> next_inbox_;
  std::vector<CellCoord> positions_;
  std::vector<SensedCell> view_;
  std::vector<std::uint64_t> series_;
  TraceSink trace_;
  int tick_ = 0;
  std::uint64_t inaccuracies_ = 0;
  std::uint64_t packets_sent_ = 0;
  std::uint64_t blocks_spawned_ = 0;
};

RunMetrics run_simulation(const SimConfig& cfg, TraceSink trace = {});

}  // namespace swarmforage
