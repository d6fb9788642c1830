#include "swarmforage/world.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swarmforage {

namespace {

std::string describe(const Rect& r) {
  return "{x=" + std::to_string(r.x) + ", y=" + std::to_string(r.y) + ", w=" + std::to_string(r.width) +
         ", h=" + std::to_string(r.height) + "}";
}

bool inside_grid(const Rect& r, int width, int height) {
  return r.x >= 0 && r.y >= 0 && r.width > 0 && r.height > 0 && r.x + r.width <= width &&
         r.y + r.height <= height;
}

}  // namespace

void ArenaConfig::validate() const {
  if (width <= 0 || height <= 0) throw ConfigError("arena dimensions must be positive");
  if (width > kMaxGridDim || height > kMaxGridDim) {
    throw ConfigError("arena " + std::to_string(width) + "x" + std::to_string(height) +
                      " exceeds the one-byte coordinate limit of " + std::to_string(kMaxGridDim));
  }
  if (!inside_grid(nest, width, height)) throw ConfigError("nest " + describe(nest) + " is not inside the grid");
  if (!inside_grid(source, width, height)) {
    throw ConfigError("source region " + describe(source) + " is not inside the grid");
  }
  if (nest.intersects(source)) throw ConfigError("nest and source region overlap");
  if (block_count < 0) throw ConfigError("block count must be nonnegative");
  if (block_count > source.area()) {
    throw ConfigError("block count " + std::to_string(block_count) + " exceeds source capacity " +
                      std::to_string(source.area()));
  }
  if (sense_radius < 0) throw ConfigError("sense radius must be nonnegative");
}

Arena::Arena(const ArenaConfig& config)
    : config_(config),
      block_(static_cast<std::size_t>(config.width) * static_cast<std::size_t>(config.height), 0),
      nest_distance_(block_.size(), 0.0) {
  const double cx = config.nest.x + (config.nest.width - 1) / 2.0;
  const double cy = config.nest.y + (config.nest.height - 1) / 2.0;
  for (int y = 0; y < config.height; ++y) {
    for (int x = 0; x < config.width; ++x) {
      nest_distance_[index_of({x, y})] = std::hypot(x - cx, y - cy);
    }
  }
}

Arena Arena::build(const ArenaConfig& config, Rng& rng) {
  config.validate();
  Arena arena(config);
  arena.respawn_blocks(rng);
  return arena;
}

Arena Arena::with_blocks(const ArenaConfig& config, std::span<const CellCoord> blocks) {
  config.validate();
  if (blocks.size() > static_cast<std::size_t>(config.block_count)) {
    throw ConfigError("more scripted blocks than the target block count");
  }
  Arena arena(config);
  for (const CellCoord c : blocks) {
    if (!config.source.contains(c)) throw ConfigError("scripted block outside the source region");
    auto& slot = arena.block_[arena.index_of(c)];
    if (slot) throw ConfigError("two scripted blocks on one cell");
    slot = 1;
    ++arena.blocks_on_ground_;
  }
  return arena;
}

bool Arena::has_block(CellCoord c) const noexcept { return in_bounds(c) && block_[index_of(c)] != 0; }

CellContent Arena::content(CellCoord c) const noexcept {
  if (in_nest(c)) return CellContent::Empty;
  return has_block(c) ? CellContent::HasBlock : CellContent::Empty;
}

std::vector<CellCoord> Arena::blocks() const {
  std::vector<CellCoord> out;
  out.reserve(blocks_on_ground_);
  for (int y = 0; y < config_.height; ++y) {
    for (int x = 0; x < config_.width; ++x) {
      if (block_[index_of({x, y})]) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<SensedCell> Arena::sense(CellCoord pos, int radius) const {
  std::vector<SensedCell> out;
  sense_into(pos, radius, out);
  return out;
}

void Arena::sense_into(CellCoord pos, int radius, std::vector<SensedCell>& out) const {
  out.clear();
  const int y0 = std::max(0, pos.y - radius);
  const int y1 = std::min(config_.height - 1, pos.y + radius);
  const int x0 = std::max(0, pos.x - radius);
  const int x1 = std::min(config_.width - 1, pos.x + radius);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) out.push_back({{x, y}, content({x, y})});
  }
}

bool Arena::pickup_block(CellCoord c) noexcept {
  if (!has_block(c)) return false;
  block_[index_of(c)] = 0;
  --blocks_on_ground_;
  return true;
}

bool Arena::deposit_at_nest(CellCoord pos) noexcept {
  if (!in_nest(pos)) return false;
  ++collected_total_;
  return true;
}

int Arena::respawn_blocks(Rng& rng) {
  const auto target = static_cast<std::size_t>(config_.block_count);
  if (blocks_on_ground_ >= target) return 0;

  std::vector<CellCoord> free_cells;
  const Rect& src = config_.source;
  free_cells.reserve(static_cast<std::size_t>(src.area()));
  for (int y = src.y; y < src.y + src.height; ++y) {
    for (int x = src.x; x < src.x + src.width; ++x) {
      if (!block_[index_of({x, y})]) free_cells.push_back({x, y});
    }
  }

  // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
  const std::size_t k = std::min(target - blocks_on_ground_, free_cells.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(free_cells.size() - i));
    std::swap(free_cells[i], free_cells[j]);
    block_[index_of(free_cells[i])] = 1;
  }
  blocks_on_ground_ += k;
  return static_cast<int>(k);
}

CellCoord Arena::nest_center_cell() const noexcept {
  return {config_.nest.x + (config_.nest.width - 1) / 2, config_.nest.y + (config_.nest.height - 1) / 2};
}

}  // namespace swarmforage
