#include "swarmforage/belief.hpp"

#include <algorithm>
#include <limits>

namespace swarmforage {

const char* to_string(CellState s) noexcept {
  switch (s) {
    case CellState::Unknown:
      return "Unknown";
    case CellState::Empty:
      return "Empty";
    case CellState::HasBlock:
      return "HasBlock";
  }
  return "?";
}

double PheromoneParams::ceiling() const noexcept {
  const double loss = loss_rate();
  if (loss <= 0.0) return std::numeric_limits<double>::infinity();
  return deposit / loss;
}

BeliefMap::BeliefMap(int width, int height)
    : width_(width),
      height_(height),
      state_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), CellState::Unknown),
      pheromone_(state_.size(), 0.0),
      in_view_(state_.size(), 0) {}

void BeliefMap::set(CellCoord c, BeliefCell cell) noexcept {
  const auto i = index_of(c);
  state_[i] = cell.state;
  pheromone_[i] = std::max(0.0, cell.pheromone);
}

std::size_t BeliefMap::count(CellState s) const noexcept {
  return static_cast<std::size_t>(std::count(state_.begin(), state_.end(), s));
}

void BeliefMap::set_view(std::span<const SensedCell> cells) {
  for (const std::size_t i : view_cells_) in_view_[i] = 0;
  view_cells_.clear();
  for (const SensedCell& sc : cells) {
    const auto i = index_of(sc.coord);
    in_view_[i] = 1;
    view_cells_.push_back(i);
  }
}

void BeliefMap::scale_pheromone(double factor) noexcept {
  for (double& tau : pheromone_) tau *= factor;
}

void decay_all(BeliefMap& map, const PheromoneParams& params) noexcept { map.scale_pheromone(params.retention()); }

void integrate_observation(BeliefMap& map, CellCoord coord, CellContent actual, const PheromoneParams& params) noexcept {
  const double refreshed = std::min(map.pheromone(coord) + params.deposit, params.ceiling());
  if (actual == CellContent::HasBlock) {
    map.set(coord, {CellState::HasBlock, refreshed});
  } else {
    map.set(coord, {CellState::Empty, params.empty == EmptyObservation::Reset ? 0.0 : refreshed});
  }
}

int detect_inaccuracy(const BeliefMap& map, CellCoord coord, CellContent actual, bool newly_in_view) noexcept {
  if (!newly_in_view) return 0;
  switch (map.state(coord)) {
    case CellState::Unknown:
      return 0;
    case CellState::Empty:
      return actual == CellContent::Empty ? 0 : 1;
    case CellState::HasBlock:
      return actual == CellContent::HasBlock ? 0 : 1;
  }
  return 0;
}

bool integrate_message(BeliefMap& map, const CellClaim& claim) noexcept {
  if (!map.in_bounds(claim.coord)) return false;
  if (claim.pheromone < map.pheromone(claim.coord)) return false;
  map.set(claim.coord, {claim.state, claim.pheromone});
  return true;
}

std::optional<CellCoord> select_cell_utility(const BeliefMap& map, const Arena& arena) noexcept {
  const auto states = map.states();
  const auto tau = map.pheromones();
  const auto dist = arena.nest_distances();
  std::optional<std::size_t> best;
  double best_utility = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] != CellState::HasBlock) continue;
    const double utility = tau[i] / std::max(dist[i], 1.0);
    if (!best || utility > best_utility) {
      best = i;
      best_utility = utility;
    }
  }
  if (!best) return std::nullopt;
  const auto w = static_cast<std::size_t>(map.width());
  return CellCoord{static_cast<int>(*best % w), static_cast<int>(*best / w)};
}

std::optional<CellCoord> select_cell_random(const BeliefMap& map, Rng& rng) noexcept {
  const auto states = map.states();
  const std::size_t known = states.size() - map.count(CellState::Unknown);
  if (known == 0) return std::nullopt;
  std::size_t pick = static_cast<std::size_t>(rng.below(known));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == CellState::Unknown) continue;
    if (pick-- == 0) {
      const auto w = static_cast<std::size_t>(map.width());
      return CellCoord{static_cast<int>(i % w), static_cast<int>(i / w)};
    }
  }
  return std::nullopt;
}

}  // namespace swarmforage
