#include "swarmforage/random.hpp"

namespace swarmforage {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
  return z ^ (z >> 33);
}

}  // namespace

std::uint64_t stream_key(std::uint64_t seed, StreamKind kind, std::uint64_t index) noexcept {
  std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dull);
  h = mix64(h ^ (static_cast<std::uint64_t>(kind) * 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (index + 0x632be59bd9b4e019ull));
  return h;
}

}  // namespace swarmforage
