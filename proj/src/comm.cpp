#include "swarmforage/comm.hpp"

#include <algorithm>
#include <cmath>

namespace swarmforage {

PacketBytes encode(const Packet& p) {
  if (p.state_code > static_cast<std::uint8_t>(CellState::HasBlock)) {
    throw EncodeError("invalid state code " + std::to_string(p.state_code));
  }
  return {p.x, p.y, p.state_code, 0, p.entity_id, p.pheromone_q};
}

Packet decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kPacketSize) {
    throw DecodeError("packet must be 6 bytes, got " + std::to_string(bytes.size()));
  }
  if (bytes[2] > static_cast<std::uint8_t>(CellState::HasBlock)) {
    throw DecodeError("invalid state code " + std::to_string(bytes[2]));
  }
  return {bytes[0], bytes[1], bytes[2], bytes[3], bytes[4], bytes[5]};
}

std::uint8_t quantize_pheromone(double tau, double ceiling) noexcept {
  if (!(tau > 0.0) || !(ceiling > 0.0)) return 0;
  const double scaled = std::min(tau, ceiling) / ceiling * 255.0;
  return static_cast<std::uint8_t>(std::min(255.0, std::floor(scaled + 0.5)));
}

double dequantize_pheromone(std::uint8_t q, double ceiling) noexcept { return q / 255.0 * ceiling; }

CellClaim to_claim(const Packet& p, double ceiling) noexcept {
  return {{p.x, p.y}, static_cast<CellState>(p.state_code), dequantize_pheromone(p.pheromone_q, ceiling)};
}

std::vector<int> recipients(int sender, std::span<const CellCoord> positions, double radius) {
  std::vector<int> out;
  const CellCoord origin = positions[static_cast<std::size_t>(sender)];
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (static_cast<int>(i) == sender) continue;
    const double dx = positions[i].x - origin.x;
    const double dy = positions[i].y - origin.y;
    if (dx * dx + dy * dy <= r2) out.push_back(static_cast<int>(i));
  }
  return out;
}

void CommConfig::validate() const {
  if (!(radius >= 0.0)) throw ConfigError("broadcast radius must be nonnegative");
  if (!(beta_send >= 0.0 && beta_send <= 1.0)) throw ConfigError("beta_send must be in [0, 1]");
  if (!(beta_receive >= 0.0 && beta_receive <= 1.0)) throw ConfigError("beta_receive must be in [0, 1]");
}

CommOutcome communicate_step(BeliefMap& belief, int robot_id, std::span<const Envelope> inbox, Rng& rng,
                             const CommConfig& cfg, const PheromoneParams& pheromone, const Arena& arena) {
  CommOutcome out;
  const double p_send = rng.uniform();
  const double p_receive = rng.uniform();
  const double ceiling = pheromone.ceiling();

  if (p_receive < cfg.beta_receive) {
    out.received = true;
    std::vector<const Envelope*> ordered;
    ordered.reserve(inbox.size());
    for (const Envelope& e : inbox) ordered.push_back(&e);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Envelope* a, const Envelope* b) { return a->sender < b->sender; });
    for (const Envelope* e : ordered) {
      if (integrate_message(belief, to_claim(e->packet, ceiling))) {
        ++out.accepted;
      } else {
        ++out.rejected;
      }
    }
  }

  if (p_send < cfg.beta_send) {
    const auto cell = cfg.selection == Selection::Utility ? select_cell_utility(belief, arena)
                                                          : select_cell_random(belief, rng);
    if (cell) {
      const BeliefCell bc = belief.at(*cell);
      out.sent = Packet{static_cast<std::uint8_t>(cell->x),
                        static_cast<std::uint8_t>(cell->y),
                        static_cast<std::uint8_t>(bc.state),
                        0,
                        static_cast<std::uint8_t>(robot_id & 0xff),
                        quantize_pheromone(bc.pheromone, ceiling)};
    }
  }
  return out;
}

std::string to_hex(const PacketBytes& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back(kDigits[bytes[i] >> 4]);
    out.push_back(kDigits[bytes[i] & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> parse_hex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  std::vector<std::uint8_t> out;
  int pending = -1;
  for (const char c : text) {
    if (c == ' ' || c == ':' || c == '-' || c == ',' || c == '\t') {
      if (pending >= 0) throw DecodeError("odd number of hex digits in byte group");
      continue;
    }
    const int v = nibble(c);
    if (v < 0) throw DecodeError(std::string("invalid hex character '") + c + "'");
    if (pending < 0) {
      pending = v;
    } else {
      out.push_back(static_cast<std::uint8_t>(pending * 16 + v));
      pending = -1;
    }
  }
  if (pending >= 0) throw DecodeError("odd number of hex digits");
  return out;
}

}  // namespace swarmforage
