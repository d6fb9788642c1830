#pragma once

#include <optional>
#include <string_view>

#include "swarmforage/belief.hpp"
#include "swarmforage/random.hpp"
#include "swarmforage/world.hpp"

namespace swarmforage {

enum class Controller {
  // Communicates the highest-utility known block cell.
  Utility,
  // Same body, but communicates a uniformly random known cell (RCS).
  RandomSelection,
  // Memoryless controlled random walk that never communicates (CRW).
  RandomWalk,
};

std::string_view to_string(Controller c) noexcept;
std::optional<Controller> parse_controller(std::string_view name) noexcept;

enum class Mode { Exploring, MovingToTarget, ReturningToNest };

std::string_view to_string(Mode m) noexcept;

struct Robot {
  int id = 0;
  CellCoord pos;
  bool carrying = false;
  Mode mode = Mode::Exploring;
  // Meaningful only in MovingToTarget.
  CellCoord target;
  Controller controller = Controller::Utility;
  // Absent for RandomWalk robots.
  std::optional<BeliefMap> belief;

  static Robot make(int id, CellCoord pos, Controller controller, int width, int height);
};

struct StepOutcome {
  CellCoord from;
  bool picked_up = false;
  bool pickup_failed = false;
  bool deposited = false;
  bool retargeted = false;
};

// One step in the 8-neighborhood that reduces Chebyshev distance to target.
constexpr CellCoord move_toward(CellCoord pos, CellCoord target) noexcept {
  auto sign = [](int v) { return (v > 0) - (v < 0); };
  return {pos.x + sign(target.x - pos.x), pos.y + sign(target.y - pos.y)};
}

// Uniform over the in-grid 8-neighbors of pos.
CellCoord random_walk_step(CellCoord pos, int width, int height, Rng& rng) noexcept;

// Action phase for one robot: movement, pickup and deposit.
StepOutcome step_robot(Robot& robot, Arena& arena, Rng& rng);

}  // namespace swarmforage
