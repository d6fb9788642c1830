#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "swarmforage/comm.hpp"

using namespace swarmforage;

namespace {

std::vector<std::uint8_t> bytes_of(std::initializer_list<int> v) {
  std::vector<std::uint8_t> out;
  for (const int b : v) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

const Arena& desk_arena() {
  static const Arena arena = Arena::with_blocks(ArenaConfig{}, {});
  return arena;
}

}  // namespace

TEST(Encode, FieldLayout) {
  const Packet p{20, 3, 2, 0, 7, 200};
  const PacketBytes want{20, 3, 2, 0, 7, 200};
  EXPECT_EQ(encode(p), want);
  EXPECT_EQ(encode(Packet{}), (PacketBytes{0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(encode(p).size(), 6u);
}

TEST(Encode, ReservedAlwaysSentAsZero) {
  const Packet p{1, 2, 1, 55, 3, 4};
  EXPECT_EQ(encode(p)[3], 0);
}

TEST(Encode, RejectsBadState) {
  EXPECT_THROW(encode(Packet{0, 0, 3, 0, 0, 0}), EncodeError);
}

TEST(Decode, Inverse) {
  EXPECT_EQ(decode(bytes_of({20, 3, 2, 0, 7, 200})), (Packet{20, 3, 2, 0, 7, 200}));
}

TEST(Decode, RejectsBadStateAndLength) {
  EXPECT_THROW(decode(bytes_of({0, 0, 3, 0, 0, 0})), DecodeError);
  EXPECT_THROW(decode(bytes_of({0, 0, 0, 0, 0})), DecodeError);
  EXPECT_THROW(decode(bytes_of({0, 0, 0, 0, 0, 0, 0})), DecodeError);
}

TEST(Decode, ReservedIgnored) {
  const Packet p = decode(bytes_of({20, 3, 2, 99, 7, 200}));
  EXPECT_EQ(p.x, 20);
  EXPECT_EQ(p.state_code, 2);
  EXPECT_EQ(p.entity_id, 7);
  EXPECT_EQ(p.pheromone_q, 200);
  const CellClaim claim = to_claim(p, 1000.0);
  EXPECT_EQ(claim.coord, (CellCoord{20, 3}));
  EXPECT_EQ(claim.state, CellState::HasBlock);
}

TEST(Hex, ParsesSeparatorsAndPrefix) {
  EXPECT_EQ(parse_hex("0x1403020007c8"), bytes_of({20, 3, 2, 0, 7, 200}));
  EXPECT_EQ(parse_hex("14:03:02:00:07:C8"), bytes_of({20, 3, 2, 0, 7, 200}));
  EXPECT_EQ(parse_hex("14 03 02 00 07 c8"), bytes_of({20, 3, 2, 0, 7, 200}));
  EXPECT_EQ(to_hex(PacketBytes{20, 3, 2, 0, 7, 200}), "14 03 02 00 07 c8");
  EXPECT_THROW(parse_hex("1g"), DecodeError);
  EXPECT_THROW(parse_hex("123"), DecodeError);
}

TEST(Quantize, Endpoints) {
  const double max = 1000.0;
  EXPECT_EQ(quantize_pheromone(0.0, max), 0);
  EXPECT_EQ(dequantize_pheromone(0, max), 0.0);
  EXPECT_EQ(quantize_pheromone(max, max), 255);
  EXPECT_EQ(quantize_pheromone(5 * max, max), 255);
  EXPECT_DOUBLE_EQ(dequantize_pheromone(255, max), max);
}

TEST(Quantize, HalfRoundsUp) {
  // 500 / 1000 * 255 = 127.5
  EXPECT_EQ(quantize_pheromone(500.0, 1000.0), 128);
}

TEST(Recipients, InclusiveBoundaryAndExclusions) {
  const std::vector<CellCoord> pos{{5, 5}, {7, 5}, {6, 7}, {5, 5}, {3, 3}};
  // (7,5) at 2 in; (6,7) at sqrt(5) out; same cell in; (3,3) at sqrt(8) out.
  EXPECT_EQ(recipients(0, pos, 2.0), (std::vector<int>{1, 3}));
  EXPECT_EQ(recipients(3, pos, 2.0), (std::vector<int>{0, 1}));
  EXPECT_TRUE(recipients(0, std::vector<CellCoord>{{1, 1}}, 5.0).empty());
}

TEST(Recipients, Symmetric) {
  Rng rng(4);
  std::vector<CellCoord> pos;
  for (int i = 0; i < 40; ++i) pos.push_back({static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))});
  for (int a = 0; a < 40; ++a) {
    for (const int b : recipients(a, pos, 2.0)) {
      const auto back = recipients(b, pos, 2.0);
      EXPECT_NE(std::find(back.begin(), back.end(), a), back.end());
    }
  }
}

TEST(CommConfig, Validation) {
  CommConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.beta_send = 1.2;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.radius = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(CommunicateStep, ClosedSendGateNeverEmits) {
  BeliefMap map(24, 12);
  map.set({21, 4}, {CellState::HasBlock, 50.0});
  CommConfig cfg;
  cfg.beta_send = 0.0;
  cfg.beta_receive = 0.0;
  Rng rng(3);
  for (int t = 0; t < 10000; ++t) {
    ASSERT_FALSE(communicate_step(map, 1, {}, rng, cfg, PheromoneParams{}, desk_arena()).sent);
  }
}

TEST(CommunicateStep, OpenReceiveIntegratesAllInSenderOrder) {
  BeliefMap map(24, 12);
  const PheromoneParams pher;
  // Two claims on the same cell: the later sender (id 9) wins when both pass,
  // no matter the arrival order.
  const std::vector<Envelope> inbox{
      {9, Packet{21, 4, 1, 0, 9, 40}},
      {2, Packet{21, 4, 2, 0, 2, 40}},
      {5, Packet{22, 6, 2, 0, 5, 10}},
  };
  CommConfig cfg;
  cfg.beta_receive = 1.0;
  cfg.beta_send = 0.0;
  Rng rng(1);
  const CommOutcome out = communicate_step(map, 0, inbox, rng, cfg, pher, desk_arena());
  EXPECT_TRUE(out.received);
  EXPECT_EQ(out.accepted, 3);
  EXPECT_EQ(map.state({21, 4}), CellState::Empty);
  EXPECT_EQ(map.state({22, 6}), CellState::HasBlock);
  EXPECT_DOUBLE_EQ(map.pheromone({22, 6}), dequantize_pheromone(10, pher.ceiling()));
}

TEST(CommunicateStep, ClosedReceiveDropsInbox) {
  BeliefMap map(24, 12);
  const std::vector<Envelope> inbox{{2, Packet{21, 4, 2, 0, 2, 40}}};
  CommConfig cfg;
  cfg.beta_receive = 0.0;
  Rng rng(1);
  const CommOutcome out = communicate_step(map, 0, inbox, rng, cfg, PheromoneParams{}, desk_arena());
  EXPECT_FALSE(out.received);
  EXPECT_EQ(map.state({21, 4}), CellState::Unknown);
}

TEST(CommunicateStep, PacketCarriesOwnBelief) {
  BeliefMap map(24, 12);
  const PheromoneParams pher;
  map.set({21, 4}, {CellState::HasBlock, 500.0});
  CommConfig cfg;
  cfg.beta_send = 1.0;
  Rng rng(1);
  const auto out = communicate_step(map, 300, {}, rng, cfg, pher, desk_arena());
  ASSERT_TRUE(out.sent);
  EXPECT_EQ(*out.sent, (Packet{21, 4, 2, 0, static_cast<std::uint8_t>(300 % 256), 128}));
}

TEST(CommunicateStep, NothingSelectableNothingSent) {
  BeliefMap map(24, 12);
  CommConfig cfg;
  cfg.beta_send = 1.0;
  Rng rng(1);
  EXPECT_FALSE(communicate_step(map, 0, {}, rng, cfg, PheromoneParams{}, desk_arena()).sent);
  cfg.selection = Selection::Random;
  EXPECT_FALSE(communicate_step(map, 0, {}, rng, cfg, PheromoneParams{}, desk_arena()).sent);
}

TEST(CommunicateStep, SendFrequencyWithinFourSigma) {
  BeliefMap map(24, 12);
  map.set({21, 4}, {CellState::HasBlock, 50.0});
  CommConfig cfg;
  cfg.beta_send = 0.9;
  cfg.beta_receive = 0.0;
  Rng rng(2024);
  const int n = 100000;
  int sent = 0;
  for (int t = 0; t < n; ++t) sent += communicate_step(map, 0, {}, rng, cfg, PheromoneParams{}, desk_arena()).sent ? 1 : 0;
  const double sigma = std::sqrt(n * 0.9 * 0.1);
  EXPECT_LE(std::abs(sent - 0.9 * n), 4.0 * sigma);
}
