#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmforage/random.hpp"
#include "swarmforage/world.hpp"

namespace swarmforage {

// Wire codes are the enumerator values.
enum class CellState : std::uint8_t { Unknown = 0, Empty = 1, HasBlock = 2 };

const char* to_string(CellState s) noexcept;

enum class DecayForm {
  // tau <- (1 - rho) * tau + deposits
  Rate,
  // tau <- rho * tau + deposits
  Literal,
};

// What seeing an empty cell does to its pheromone.
enum class EmptyObservation {
  // Deposit like any other sighting, so a fresh look outranks relayed claims.
  Refresh,
  // Drop to zero.
  Reset,
};

struct PheromoneParams {
  double rho = 0.001;
  DecayForm form = DecayForm::Rate;
  EmptyObservation empty = EmptyObservation::Refresh;
  // Amount laid per sighting.
  double deposit = 1.0;

  double retention() const noexcept { return form == DecayForm::Rate ? 1.0 - rho : rho; }
  double loss_rate() const noexcept { return 1.0 - retention(); }
  // Steady-state level under one deposit per tick: deposit / loss_rate.
  // Infinite when nothing decays.
  double ceiling() const noexcept;
};

struct BeliefCell {
  CellState state = CellState::Unknown;
  double pheromone = 0.0;

  friend bool operator==(const BeliefCell&, const BeliefCell&) = default;
};

// Content of a decoded message: what the sender believes about one cell.
struct CellClaim {
  CellCoord coord;
  CellState state = CellState::Unknown;
  double pheromone = 0.0;
};

// A robot's private two-layer grid (content state + pheromone), plus the set
// of cells that were in its sensing range on the previous tick.
class BeliefMap {
 public:
  BeliefMap(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool in_bounds(CellCoord c) const noexcept {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  std::size_t index_of(CellCoord c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }

  BeliefCell at(CellCoord c) const noexcept { return {state_[index_of(c)], pheromone_[index_of(c)]}; }
  CellState state(CellCoord c) const noexcept { return state_[index_of(c)]; }
  double pheromone(CellCoord c) const noexcept { return pheromone_[index_of(c)]; }
  void set(CellCoord c, BeliefCell cell) noexcept;

  std::span<const CellState> states() const noexcept { return state_; }
  std::span<const double> pheromones() const noexcept { return pheromone_; }
  std::size_t count(CellState s) const noexcept;

  bool in_view(CellCoord c) const noexcept { return in_view_[index_of(c)] != 0; }
  // Replaces the in-view set with `cells`.
  void set_view(std::span<const SensedCell> cells);

  void scale_pheromone(double factor) noexcept;

 private:
  int width_;
  int height_;
  std::vector<CellState> state_;
  std::vector<double> pheromone_;
  std::vector<std::uint8_t> in_view_;
  std::vector<std::size_t> view_cells_;
};

void decay_all(BeliefMap& map, const PheromoneParams& params) noexcept;

// Records what the robot sees at `coord` this tick. Every sighting deposits
// pheromone (clamped to the ceiling), except that an empty cell is zeroed
// under EmptyObservation::Reset.
void integrate_observation(BeliefMap& map, CellCoord coord, CellContent actual, const PheromoneParams& params) noexcept;

// 1 when a committed belief is contradicted as the cell enters view, else 0.
// Call before integrate_observation for the same observation.
int detect_inaccuracy(const BeliefMap& map, CellCoord coord, CellContent actual, bool newly_in_view) noexcept;

// Accepts the claim unless its pheromone is strictly lower than the local
// level. An accepted claim overwrites the cell as if observed first-hand.
bool integrate_message(BeliefMap& map, const CellClaim& claim) noexcept;

// Block cell maximizing pheromone / max(distance to nest, 1); ties go to the
// first cell in row-major order. Arena and map must share dimensions.
std::optional<CellCoord> select_cell_utility(const BeliefMap& map, const Arena& arena) noexcept;

// Uniformly random cell among those with a committed state.
std::optional<CellCoord> select_cell_random(const BeliefMap& map, Rng& rng) noexcept;

}  // namespace swarmforage
