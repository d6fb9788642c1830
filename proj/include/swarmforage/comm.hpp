#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforage/belief.hpp"
#include "swarmforage/random.hpp"
#include "swarmforage/world.hpp"

namespace swarmforage {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kPacketSize = 6;
using PacketBytes = std::array<std::uint8_t, kPacketSize>;

// One broadcast message. Byte order on the wire is the member order.
struct Packet {
  std::uint8_t x = 0;
  std::uint8_t y = 0;
  std::uint8_t state_code = 0;
  // Always sent as 0; whatever arrives is kept but never interpreted.
  std::uint8_t reserved = 0;
  // Sender id modulo 256.
  std::uint8_t entity_id = 0;
  std::uint8_t pheromone_q = 0;

  friend bool operator==(const Packet&, const Packet&) = default;
};

PacketBytes encode(const Packet& p);
Packet decode(std::span<const std::uint8_t> bytes);

// Linear fixed point over [0, ceiling], round half up.
std::uint8_t quantize_pheromone(double tau, double ceiling) noexcept;
double dequantize_pheromone(std::uint8_t q, double ceiling) noexcept;

CellClaim to_claim(const Packet& p, double ceiling) noexcept;

// Ids of every robot other than `sender` whose cell lies within Euclidean
// distance `radius` of `positions[sender]`, ascending. positions is indexed
// by robot id.
std::vector<int> recipients(int sender, std::span<const CellCoord> positions, double radius);

enum class Selection { Utility, Random };

struct CommConfig {
  double radius = 2.0;
  double beta_send = 0.6;
  double beta_receive = 0.6;
  Selection selection = Selection::Utility;

  void validate() const;
};

// A packet as delivered, tagged with the full sender id.
struct Envelope {
  int sender = 0;
  Packet packet;
};

struct CommOutcome {
  bool received = false;
  int accepted = 0;
  int rejected = 0;
  std::optional<Packet> sent;
};

// One robot's communication phase: a single receive draw gates the whole
// inbox (integrated in sender-id order, or dropped), then a single send draw
// gates at most one outgoing packet about the selected cell.
CommOutcome communicate_step(BeliefMap& belief, int robot_id, std::span<const Envelope> inbox, Rng& rng,
                             const CommConfig& cfg, const PheromoneParams& pheromone, const Arena& arena);

std::string to_hex(const PacketBytes& bytes);
// Accepts hex digits with optional whitespace, ':' or '-' separators.
std::vector<std::uint8_t> parse_hex(std::string_view text);

}  // namespace swarmforage
