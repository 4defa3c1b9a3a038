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

#ifndef RICHMAN_STRATEGY_HPP_
#define RICHMAN_STRATEGY_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>

#include "richman/graph.hpp"
#include "richman/rational.hpp"
#include "richman/solver.hpp"

namespace richman {

enum class Color { kBlue, kRed };

inline Color Opponent(Color c) {
  return c == Color::kBlue ? Color::kRed : Color::kBlue;
}
std::string_view ToString(Color c);

// What an agent is allowed to see.
enum class Knowledge { kFull, kOwnBankroll };

struct Observation {
  Color color = Color::kBlue;
  VertexIndex position = 0;
  Money own_money;
  // Present only for agents declaring Knowledge::kFull.
  std::optional<Money> opponent_money;
  // Per-step randomness handed out by the simulator.
  std::uint64_t entropy = 0;
};

struct BidDecision {
  Money bid;
  VertexIndex move_to = 0;

  bool operator==(const BidDecision& other) const {
    return bid == other.bid && move_to == other.move_to;
  }
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string_view name() const = 0;
  virtual Color color() const = 0;
  virtual Knowledge knowledge() const = 0;
  virtual BidDecision Decide(const Observation& obs) const = 0;
};

using AgentPtr = std::shared_ptr<const Agent>;
using GraphPtr = std::shared_ptr<const GameGraph>;

// (R(v) - R-(v)) * total, which equals (R+(v) - R(v)) * total.
// Throws std::invalid_argument at a terminal.
Money OptimalBid(const CostTable& costs, const GameGraph& g, VertexIndex v,
                 const Money& total);

// Blue: own_share / R(v), undefined when R(v) = 0.
// Red:  own_share / (1 - R(v)), undefined when R(v) = 1.
std::optional<Rat> SafetyRatio(const CostTable& costs, VertexIndex v,
                               const Rat& own_share,
                               Color color = Color::kBlue);

// Blue takes a cost-minimising successor, Red a cost-maximising one; among
// those, one on a shortest steepest path to the mover's terminal, then the
// lexicographically smallest.
VertexIndex RandomTurnOptimalMove(const CostTable& costs, const GameGraph& g,
                                  VertexIndex v, Color mover);
VertexIndex RandomTurnOptimalMove(const SteepestPaths& paths,
                                  const GameGraph& g, VertexIndex v,
                                  Color mover);

// Lazily extended R(.,t) (upper) or R'(.,t) (lower) sequence. Thread-safe;
// returned references stay valid for the cache's lifetime.
class IterateCache {
 public:
  IterateCache(GraphPtr g, bool upper);
  const CostTable& at(std::size_t t) const;

 private:
  GraphPtr graph_;
  mutable std::mutex mu_;
  mutable std::deque<CostTable> tables_;
};

enum class Raise { kNone, kSlackHalf };

// Full-knowledge agent. With a share above its critical share it plays the
// finite-horizon strategy: for the smallest t whose iterate it beats, bid half
// the spread of the (t-1) iterate over S(v) times the total supply and move to
// the iterate's extreme successor. Otherwise it bids
// (R+(v) - R-(v)) / 2 * total and moves by steepest descent (Blue) or ascent
// (Red), lexicographically. Bids are capped at the bankroll. With
// Raise::kSlackHalf a winning agent adds min(slack / 2, bankroll - bid).
AgentPtr MakeFullKnowledgeAgent(GraphPtr g, CostTable costs, Color color,
                                Raise raise = Raise::kSlackHalf);

// Never looks at the opponent's bankroll. Blue holding B at v bids
// B * (R(v) - R-(v)) / R(v); Red mirrors with B * (R+(v) - R(v)) / (1 - R(v)).
// Moves along a steepest edge toward its own terminal.
AgentPtr MakeSafetyRatioAgent(GraphPtr g, CostTable costs, Color color);

// Bid uniform in [0, bankroll] (on a 2^-32 grid), move to a uniform
// successor. Driven by Observation::entropy.
AgentPtr MakeUniformRandomAgent(GraphPtr g, Color color);

// CLI names: "optimal", "safety", "uniform-random-bid".
// Throws std::invalid_argument for an unknown name.
AgentPtr MakeAgentByName(std::string_view name, GraphPtr g,
                         const CostTable& costs, Color color);

}  // namespace richman

#endif  // RICHMAN_STRATEGY_HPP_
