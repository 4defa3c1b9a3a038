// Copyright 2026 The Richman Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RICHMAN_SIMULATOR_HPP_
#define RICHMAN_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "richman/graph.hpp"
#include "richman/rational.hpp"
#include "richman/solver.hpp"
#include "richman/strategy.hpp"

namespace richman {

// Counter-based seed derivation: a stream for (seed, index) that does not
// depend on what any other stream consumed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

enum class TiebreakKind { kFairCoin, kAlwaysBlue, kAlwaysRed };

struct TiebreakPolicy {
  TiebreakKind kind = TiebreakKind::kFairCoin;
};

enum class Outcome { kBlueWins, kRedWins, kUnresolved };
std::string_view ToString(Outcome outcome);

struct GameState {
  VertexIndex position = 0;
  Money blue_money;
  Money red_money;
};

struct Step {
  VertexIndex position = 0;
  Money blue_bid;
  Money red_bid;
  // Who won the coin, when a coin was needed.
  std::optional<Color> tiebreak;
  Color bid_winner = Color::kBlue;
  Money transfer;
  VertexIndex move_to = 0;
  Money blue_money_after;
  Money red_money_after;
};

struct GameRecord {
  GameState start;
  std::vector<Step> steps;
  Outcome outcome = Outcome::kUnresolved;
  VertexIndex final_position = 0;
  std::size_t max_moves = 0;

  // Bankrolls before step i.
  GameState state_before(std::size_t i) const;
};

class ProtocolViolation : public std::runtime_error {
 public:
  ProtocolViolation(Color offender, const std::string& what,
                    std::optional<std::size_t> game = std::nullopt);
  Color offender() const { return offender_; }
  std::optional<std::size_t> game() const { return game_; }

 private:
  Color offender_;
  std::optional<std::size_t> game_;
};

std::size_t DefaultRichmanMoveCap(const GameGraph& g, bool acyclic);
std::size_t DefaultRandomTurnMoveCap(const GameGraph& g);
bool IsAcyclic(const GameGraph& g);

// Plays one Richman game. Both bids are collected before either is compared;
// the higher bid wins, equal bids go to the tiebreak, the winner pays its bid
// to the loser and moves. Throws std::invalid_argument for a terminal start
// or negative bankroll and ProtocolViolation for an illegal bid or move.
GameRecord PlayRichmanGame(const GameGraph& g, const Agent& blue,
                           const Agent& red, const GameState& start,
                           TiebreakPolicy tiebreak, std::size_t max_moves,
                           std::uint64_t seed);

struct BatchStats {
  std::size_t runs = 0;
  std::size_t blue_wins = 0;
  std::size_t red_wins = 0;
  std::size_t unresolved = 0;
  std::uint64_t master_seed = 0;
  // moves -> number of games
  std::map<std::size_t, std::size_t> move_histogram;
};

// Game i is seeded with DeriveSeed(master_seed, i); results do not depend on
// `threads`. If `records` is non-null it receives every GameRecord in order.
BatchStats RunBatch(const GameGraph& g, const Agent& blue, const Agent& red,
                    const GameState& start, TiebreakPolicy tiebreak,
                    std::size_t max_moves, std::size_t runs,
                    std::uint64_t master_seed, std::size_t threads = 1,
                    std::vector<GameRecord>* records = nullptr);

// Each step a fair coin picks the mover, who plays RandomTurnOptimalMove.
// Bankroll and bid fields stay zero; Step::tiebreak records the coin.
GameRecord PlayRandomTurnGame(const GameGraph& g, const CostTable& costs,
                              VertexIndex start, std::size_t max_moves,
                              std::uint64_t seed);

struct RandomTurnEstimate {
  std::size_t n = 0;
  std::size_t red_wins = 0;
  std::size_t blue_wins = 0;
  std::size_t unresolved = 0;
  double frequency = 0;  // red_wins / n
  double std_error = 0;  // sqrt(f (1 - f) / n)
};

RandomTurnEstimate EstimateRandomTurnValue(const GameGraph& g,
                                           const CostTable& costs,
                                           VertexIndex start, std::size_t n,
                                           std::uint64_t master_seed,
                                           std::size_t max_moves = 0);

}  // namespace richman

#endif  // RICHMAN_SIMULATOR_HPP_
