#include "swarmforage/engine.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace swarmforage {

void SimConfig::validate() const {
  arena.validate();
  comm.validate();
  if (ticks <= 0) throw ConfigError("ticks must be positive");
  if (metrics_interval <= 0) throw ConfigError("metrics interval must be positive");
  if (n_robots <= 0) throw ConfigError("robot count must be positive");
  if (!(pheromone.rho >= 0.0 && pheromone.rho <= 1.0)) throw ConfigError("rho must be in [0, 1]");
  if (!(pheromone.deposit > 0.0)) throw ConfigError("pheromone deposit must be positive");
  if (controller != Controller::RandomWalk && !std::isfinite(pheromone.ceiling())) {
    throw ConfigError("pheromone never decays with this rho and decay form, so it has no byte encoding");
  }
  const int start_cells = arena.width * arena.height - arena.source.area();
  if (n_robots > start_cells) {
    throw ConfigError(std::to_string(n_robots) + " robots do not fit on " + std::to_string(start_cells) +
                      " distinct start cells outside the source region");
  }
}

double performance(double blocks, double inaccuracies) noexcept {
  if (inaccuracies > 0.0) return blocks / inaccuracies;
  return std::numeric_limits<double>::quiet_NaN();
}

Simulation::Setup Simulation::random_setup(const SimConfig& cfg) {
  cfg.validate();
  Rng world_rng = make_stream(cfg.seed, StreamKind::World);
  Arena arena = Arena::build(cfg.arena, world_rng);

  // Distinct start cells outside the source region.
  std::vector<CellCoord> cells;
  for (int y = 0; y < cfg.arena.height; ++y) {
    for (int x = 0; x < cfg.arena.width; ++x) {
      if (!cfg.arena.source.contains({x, y})) cells.push_back({x, y});
    }
  }
  Rng rng = make_stream(cfg.seed, StreamKind::Placement);
  std::vector<Robot> robots;
  robots.reserve(static_cast<std::size_t>(cfg.n_robots));
  for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.n_robots); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(cells.size() - i));
    std::swap(cells[i], cells[j]);
    robots.push_back(Robot::make(static_cast<int>(i), cells[i], cfg.controller, cfg.arena.width, cfg.arena.height));
  }
  return {world_rng, std::move(arena), std::move(robots)};
}

Simulation::Simulation(const SimConfig& cfg) : Simulation(cfg, random_setup(cfg)) {}

Simulation::Simulation(const SimConfig& cfg, Arena arena, std::vector<Robot> robots)
    : Simulation(cfg, Setup{make_stream(cfg.seed, StreamKind::World), std::move(arena), std::move(robots)}) {}

Simulation::Simulation(const SimConfig& cfg, Setup setup)
    : cfg_(cfg), world_rng_(setup.world_rng), arena_(std::move(setup.arena)), robots_(std::move(setup.robots)) {
  cfg_.arena = arena_.config();
  cfg_.n_robots = static_cast<int>(robots_.size());
  cfg_.validate();
  const std::size_t n = robots_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Robot& r = robots_[i];
    if (r.id != static_cast<int>(i)) throw ConfigError("robot ids must equal their index");
    if (!arena_.in_bounds(r.pos)) throw ConfigError("robot placed outside the grid");
    if (r.belief && (r.belief->width() != arena_.width() || r.belief->height() != arena_.height())) {
      throw ConfigError("belief map dimensions differ from the arena");
    }
    comm_rng_.push_back(make_stream(cfg_.seed, StreamKind::Comm, i));
    motion_rng_.push_back(make_stream(cfg_.seed, StreamKind::Motion, i));
  }
  inbox_.assign(n, {});
  next_inbox_.assign(n, {});
  positions_.resize(n);
}

void Simulation::emit(int robot, std::string_view kind, CellCoord cell, std::int64_t value) {
  if (trace_) trace_(TraceEvent{tick_, robot, kind, cell, value});
}

void Simulation::tick() {
  ++tick_;

  for (Robot& r : robots_) {
    if (r.belief) decay_all(*r.belief, cfg_.pheromone);
  }
  sense_phase();
  communicate_phase();
  action_phase();

  const int spawned = arena_.respawn_blocks(world_rng_);
  blocks_spawned_ += static_cast<std::uint64_t>(spawned);
  if (spawned > 0) emit(-1, "respawn", {}, spawned);

  if (tick_ % cfg_.metrics_interval == 0) series_.push_back(inaccuracies_);
}

void Simulation::run() {
  while (tick_ < cfg_.ticks) tick();
}

void Simulation::sense_phase() {
  const int radius = cfg_.arena.sense_radius;
  for (Robot& r : robots_) {
    if (!r.belief) continue;
    BeliefMap& belief = *r.belief;
    arena_.sense_into(r.pos, radius, view_);
    for (const SensedCell& sc : view_) {
      const int wrong = detect_inaccuracy(belief, sc.coord, sc.content, !belief.in_view(sc.coord));
      if (wrong) {
        inaccuracies_ += 1;
        emit(r.id, "inaccuracy", sc.coord, static_cast<std::int64_t>(belief.state(sc.coord)));
      }
      integrate_observation(belief, sc.coord, sc.content, cfg_.pheromone);
    }
    belief.set_view(view_);
  }
}

void Simulation::communicate_phase() {
  CommConfig comm = cfg_.comm;
  comm.selection = cfg_.controller == Controller::RandomSelection ? Selection::Random : Selection::Utility;

  for (std::size_t i = 0; i < robots_.size(); ++i) positions_[i] = robots_[i].pos;

  for (std::size_t i = 0; i < robots_.size(); ++i) {
    Robot& r = robots_[i];
    if (!r.belief) continue;
    const CommOutcome out =
        communicate_step(*r.belief, r.id, inbox_[i], comm_rng_[i], comm, cfg_.pheromone, arena_);
    if (out.received && out.accepted + out.rejected > 0) {
      emit(r.id, "receive", {}, out.accepted);
    }
    if (!out.sent) continue;
    ++packets_sent_;
    emit(r.id, "send", {out.sent->x, out.sent->y}, out.sent->pheromone_q);
    for (const int dest : recipients(r.id, positions_, comm.radius)) {
      if (robots_[static_cast<std::size_t>(dest)].belief) {
        next_inbox_[static_cast<std::size_t>(dest)].push_back({r.id, *out.sent});
      }
    }
  }

  // Packets sent this tick become readable next tick.
  inbox_.swap(next_inbox_);
  for (auto& box : next_inbox_) box.clear();
}

void Simulation::action_phase() {
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    Robot& r = robots_[i];
    const StepOutcome out = step_robot(r, arena_, motion_rng_[i]);
    if (out.picked_up) emit(r.id, "pickup", r.pos);
    if (out.pickup_failed) emit(r.id, "pickup_failed", r.pos);
    if (out.deposited) emit(r.id, "deposit", r.pos, static_cast<std::int64_t>(arena_.collected_total()));
  }
}

std::size_t Simulation::blocks_carried() const noexcept {
  std::size_t n = 0;
  for (const Robot& r : robots_) n += r.carrying ? 1 : 0;
  return n;
}

RunMetrics Simulation::metrics() const {
  RunMetrics m;
  m.blocks_collected = arena_.collected_total();
  m.inaccuracies = inaccuracies_;
  m.inaccuracy_series = series_;
  m.performance = performance(static_cast<double>(m.blocks_collected), static_cast<double>(m.inaccuracies));
  m.packets_sent = packets_sent_;
  return m;
}

RunMetrics run_simulation(const SimConfig& cfg, TraceSink trace) {
  Simulation sim(cfg);
  sim.set_trace(std::move(trace));
  sim.run();
  return sim.metrics();
}

}  // namespace swarmforage
