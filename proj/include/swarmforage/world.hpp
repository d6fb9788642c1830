#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmforage/random.hpp"

namespace swarmforage {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each packet coordinate is a single byte.
inline constexpr int kMaxGridDim = 256;

struct CellCoord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(CellCoord, CellCoord) = default;
};

// Axis-aligned block of cells, origin at its lowest (x, y).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  constexpr bool contains(CellCoord c) const noexcept {
    return c.x >= x && c.x < x + width && c.y >= y && c.y < y + height;
  }
  constexpr int area() const noexcept { return width * height; }
  constexpr bool intersects(const Rect& o) const noexcept {
    return x < o.x + o.width && o.x < x + width && y < o.y + o.height && o.y < y + height;
  }

  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

enum class CellContent : std::uint8_t { Empty, HasBlock };

struct SensedCell {
  CellCoord coord;
  CellContent content;
};

struct ArenaConfig {
  int width = 24;
  int height = 12;
  Rect nest{0, 0, 2, 12};
  Rect source{20, 0, 4, 12};
  int block_count = 24;
  int sense_radius = 2;

  // Throws ConfigError describing the first violated constraint.
  void validate() const;
};

// Ground truth for one simulation: grid, nest, source region and the blocks
// currently lying in it. Mutated only by the engine's tick.
class Arena {
 public:
  // Places config.block_count blocks on distinct, uniformly drawn source cells.
  static Arena build(const ArenaConfig& config, Rng& rng);

  // Scripted layout. Every block must lie in the source region, no duplicates,
  // and there may be no more than config.block_count of them.
  static Arena with_blocks(const ArenaConfig& config, std::span<const CellCoord> blocks);

  const ArenaConfig& config() const noexcept { return config_; }
  int width() const noexcept { return config_.width; }
  int height() const noexcept { return config_.height; }
  const Rect& nest() const noexcept { return config_.nest; }
  const Rect& source() const noexcept { return config_.source; }
  int target_block_count() const noexcept { return config_.block_count; }

  bool in_bounds(CellCoord c) const noexcept {
    return c.x >= 0 && c.x < config_.width && c.y >= 0 && c.y < config_.height;
  }
  std::size_t index_of(CellCoord c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(config_.width) +
           static_cast<std::size_t>(c.x);
  }
  bool in_nest(CellCoord c) const noexcept { return config_.nest.contains(c); }

  bool has_block(CellCoord c) const noexcept;
  CellContent content(CellCoord c) const noexcept;
  std::size_t block_count() const noexcept { return blocks_on_ground_; }
  // Block cells in row-major order.
  std::vector<CellCoord> blocks() const;
  std::uint64_t collected_total() const noexcept { return collected_total_; }

  // Every in-grid cell within Chebyshev distance `radius` of pos, row-major.
  std::vector<SensedCell> sense(CellCoord pos, int radius) const;
  void sense_into(CellCoord pos, int radius, std::vector<SensedCell>& out) const;

  bool pickup_block(CellCoord c) noexcept;
  bool deposit_at_nest(CellCoord pos) noexcept;
  int respawn_blocks(Rng& rng);

  double distance_to_nest(CellCoord c) const noexcept { return nest_distance_[index_of(c)]; }
  // Per-cell distance to the nest center, row-major.
  std::span<const double> nest_distances() const noexcept { return nest_distance_; }
  // Cell nearest the nest center point (rounding toward the origin).
  CellCoord nest_center_cell() const noexcept;

 private:
  explicit Arena(const ArenaConfig& config);

  ArenaConfig config_;
  std::vector<std::uint8_t> block_;
  std::vector<double> nest_distance_;
  std::size_t blocks_on_ground_ = 0;
  std::uint64_t collected_total_ = 0;
};

}  // namespace swarmforage
