#pragma once

#include <cstdint>
#include <limits>

namespace swarmforage {

// SplitMix64 stream. Every draw is a pure function of (key, counter), so a
// stream can be re-created anywhere from its key alone.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound). bound must be > 0. Rejection sampling keeps
  // the result unbiased and identical on every platform, which
  // std::uniform_int_distribution does not guarantee.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

enum class StreamKind : std::uint64_t {
  World = 1,
  Placement = 2,
  Comm = 3,
  Motion = 4,
};

// Derives an independent stream key from (seed, kind, index).
std::uint64_t stream_key(std::uint64_t seed, StreamKind kind, std::uint64_t index) noexcept;

inline Rng make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t index = 0) noexcept {
  return Rng(stream_key(seed, kind, index));
}

}  // namespace swarmforage
