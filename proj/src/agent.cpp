#include "swarmforage/agent.hpp"

#include <array>

namespace swarmforage {

std::string_view to_string(Controller c) noexcept {
  switch (c) {
    case Controller::Utility:
      return "utility";
    case Controller::RandomSelection:
      return "rcs";
    case Controller::RandomWalk:
      return "crw";
  }
  return "?";
}

std::optional<Controller> parse_controller(std::string_view name) noexcept {
  if (name == "utility" || name == "Utility") return Controller::Utility;
  if (name == "rcs" || name == "RCS") return Controller::RandomSelection;
  if (name == "crw" || name == "CRW") return Controller::RandomWalk;
  return std::nullopt;
}

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::Exploring:
      return "exploring";
    case Mode::MovingToTarget:
      return "moving_to_target";
    case Mode::ReturningToNest:
      return "returning_to_nest";
  }
  return "?";
}

Robot Robot::make(int id, CellCoord pos, Controller controller, int width, int height) {
  Robot r;
  r.id = id;
  r.pos = pos;
  r.controller = controller;
  if (controller != Controller::RandomWalk) r.belief.emplace(width, height);
  return r;
}

CellCoord random_walk_step(CellCoord pos, int width, int height, Rng& rng) noexcept {
  std::array<CellCoord, 8> candidates{};
  std::size_t n = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const CellCoord c{pos.x + dx, pos.y + dy};
      if (c.x >= 0 && c.x < width && c.y >= 0 && c.y < height) candidates[n++] = c;
    }
  }
  if (n == 0) return pos;
  return candidates[static_cast<std::size_t>(rng.below(n))];
}

namespace {

void return_to_nest(Robot& robot, Arena& arena, StepOutcome& out) {
  if (!arena.in_nest(robot.pos)) robot.pos = move_toward(robot.pos, arena.nest_center_cell());
  if (arena.deposit_at_nest(robot.pos)) {
    robot.carrying = false;
    robot.mode = Mode::Exploring;
    out.deposited = true;
  }
}

bool try_pickup(Robot& robot, Arena& arena) {
  if (!arena.pickup_block(robot.pos)) return false;
  robot.carrying = true;
  robot.mode = Mode::ReturningToNest;
  return true;
}

void step_random_walker(Robot& robot, Arena& arena, Rng& rng, StepOutcome& out) {
  if (try_pickup(robot, arena)) {
    out.picked_up = true;
    return;
  }
  robot.pos = random_walk_step(robot.pos, arena.width(), arena.height(), rng);
  out.picked_up = try_pickup(robot, arena);
}

void step_mapping_forager(Robot& robot, Arena& arena, Rng& rng, StepOutcome& out) {
  const BeliefMap& belief = *robot.belief;

  if (robot.mode == Mode::MovingToTarget && belief.state(robot.target) != CellState::HasBlock) {
    robot.mode = Mode::Exploring;
    out.retargeted = true;
  }
  if (robot.mode == Mode::Exploring) {
    if (const auto target = select_cell_utility(belief, arena)) {
      robot.mode = Mode::MovingToTarget;
      robot.target = *target;
    }
  }

  if (robot.mode != Mode::MovingToTarget) {
    robot.pos = random_walk_step(robot.pos, arena.width(), arena.height(), rng);
    return;
  }

  if (robot.pos != robot.target) robot.pos = move_toward(robot.pos, robot.target);
  if (robot.pos == robot.target) {
    if (try_pickup(robot, arena)) {
      out.picked_up = true;
    } else {
      robot.mode = Mode::Exploring;
      out.pickup_failed = true;
    }
  }
}

}  // namespace

StepOutcome step_robot(Robot& robot, Arena& arena, Rng& rng) {
  StepOutcome out;
  out.from = robot.pos;
  if (robot.carrying) {
    return_to_nest(robot, arena, out);
  } else if (robot.controller == Controller::RandomWalk || !robot.belief) {
    step_random_walker(robot, arena, rng, out);
  } else {
    step_mapping_forager(robot, arena, rng, out);
  }
  return out;
}

}  // namespace swarmforage
