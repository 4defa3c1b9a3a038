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

#include "richman/strategy.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace richman {

namespace {

// Beyond this horizon the finite-horizon search gives up and the agent falls
// back to the limiting formula.
constexpr std::size_t kMaxHorizon = 1 << 16;

void RequireNonTerminal(const GameGraph& g, VertexIndex v) {
  if (g.is_terminal(v)) {
    throw std::invalid_argument("vertex " + g.id(v) + " is terminal");
  }
}

Money CapAndRaise(Money formula, const Money& own, const Money& slack,
                  Raise raise) {
  if (formula >= own) return own;
  if (raise == Raise::kSlackHalf && slack > 0) {
    Money headroom = own - formula;
    Money half = slack / 2;
    formula += std::min(half, headroom);
  }
  return formula;
}

class FullKnowledgeAgent final : public Agent {
 public:
  FullKnowledgeAgent(GraphPtr g, CostTable costs, Color color, Raise raise)
      : graph_(std::move(g)),
        costs_(std::move(costs)),
        color_(color),
        raise_(raise),
        iterates_(graph_, color == Color::kBlue) {}

  std::string_view name() const override { return "optimal"; }
  Color color() const override { return color_; }
  Knowledge knowledge() const override { return Knowledge::kFull; }

  BidDecision Decide(const Observation& obs) const override {
    const GameGraph& g = *graph_;
    const VertexIndex v = obs.position;
    RequireNonTerminal(g, v);
    if (!obs.opponent_money) {
      throw std::invalid_argument("full-knowledge agent needs the opponent's "
                                  "bankroll");
    }
    const Money total = obs.own_money + *obs.opponent_money;
    const ExtremalPair limit = ExtremalSuccessors(g, costs_, v);
    const VertexIndex limit_move = color_ == Color::kBlue ? limit.minus : limit.plus;
    const Money limit_bid = (costs_[limit.plus] - costs_[limit.minus]) / 2 * total;
    if (total == 0) return {Money(0), limit_move};

    const Rat blue_share =
        (color_ == Color::kBlue ? obs.own_money : *obs.opponent_money) / total;
    const bool winning = color_ == Color::kBlue ? blue_share > costs_[v]
                                                : blue_share < costs_[v];
    if (!winning) {
      return {CapAndRaise(limit_bid, obs.own_money, Money(0), raise_),
              limit_move};
    }

    // Smallest t with the share strictly past the t-th iterate at v.
    for (std::size_t t = 1; t <= kMaxHorizon; ++t) {
      const Rat& threshold = iterates_.at(t)[v];
      const bool beats = color_ == Color::kBlue ? blue_share > threshold
                                                : blue_share < threshold;
      if (!beats) continue;
      const CostTable& prev = iterates_.at(t - 1);
      const ExtremalPair ext = ExtremalSuccessors(g, prev, v);
      const Money formula = (prev[ext.plus] - prev[ext.minus]) / 2 * total;
      const Money slack = (color_ == Color::kBlue ? blue_share - threshold
                                                  : threshold - blue_share) *
                          total;
      return {CapAndRaise(formula, obs.own_money, slack, raise_),
              color_ == Color::kBlue ? ext.minus : ext.plus};
    }
    return {CapAndRaise(limit_bid, obs.own_money, Money(0), raise_), limit_move};
  }

 private:
  GraphPtr graph_;
  CostTable costs_;
  Color color_;
  Raise raise_;
  IterateCache iterates_;
};

class SafetyRatioAgent final : public Agent {
 public:
  SafetyRatioAgent(GraphPtr g, CostTable costs, Color color)
      : graph_(std::move(g)),
        costs_(std::move(costs)),
        paths_(*graph_, costs_),
        color_(color) {}

  std::string_view name() const override { return "safety"; }
  Color color() const override { return color_; }
  Knowledge knowledge() const override { return Knowledge::kOwnBankroll; }

  BidDecision Decide(const Observation& obs) const override {
    const GameGraph& g = *graph_;
    const VertexIndex v = obs.position;
    RequireNonTerminal(g, v);
    const ExtremalPair ext = ExtremalSuccessors(g, costs_, v);
    const Rat& cost = costs_[v];
    if (color_ == Color::kBlue) {
      const VertexIndex move = paths_.toward_blue(v);
      if (cost == 0) return {Money(0), move};
      return {obs.own_money * (cost - costs_[ext.minus]) / cost, move};
    }
    const VertexIndex move = paths_.toward_red(v);
    if (cost == 1) return {Money(0), move};
    return {obs.own_money * (costs_[ext.plus] - cost) / (1 - cost), move};
  }

 private:
  GraphPtr graph_;
  CostTable costs_;
  SteepestPaths paths_;
  Color color_;
};

class UniformRandomAgent final : public Agent {
 public:
  UniformRandomAgent(GraphPtr g, Color color) : graph_(std::move(g)), color_(color) {}

  std::string_view name() const override { return "uniform-random-bid"; }
  Color color() const override { return color_; }
  Knowledge knowledge() const override { return Knowledge::kOwnBankroll; }

  BidDecision Decide(const Observation& obs) const override {
    const GameGraph& g = *graph_;
    RequireNonTerminal(g, obs.position);
    std::mt19937_64 rng(obs.entropy);
    constexpr std::uint64_t kGrid = std::uint64_t{1} << 32;
    std::uniform_int_distribution<std::uint64_t> tick(0, kGrid);
    Money bid = obs.own_money * Rat(mpz_class(static_cast<unsigned long>(tick(rng))),
                                    mpz_class(static_cast<unsigned long>(kGrid)));
    bid.canonicalize();
    const auto& succ = g.successors(obs.position);
    std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
    return {bid, succ[pick(rng)]};
  }

 private:
  GraphPtr graph_;
  Color color_;
};

}  // namespace

std::string_view ToString(Color c) { return c == Color::kBlue ? "blue" : "red"; }

Money OptimalBid(const CostTable& costs, const GameGraph& g, VertexIndex v,
                 const Money& total) {
  RequireNonTerminal(g, v);
  const ExtremalPair ext = ExtremalSuccessors(g, costs, v);
  return (costs[v] - costs[ext.minus]) * total;
}

std::optional<Rat> SafetyRatio(const CostTable& costs, VertexIndex v,
                               const Rat& own_share, Color color) {
  const Rat& cost = costs[v];
  if (color == Color::kBlue) {
    if (cost == 0) return std::nullopt;
    return Rat(own_share / cost);
  }
  if (cost == 1) return std::nullopt;
  return Rat(own_share / (1 - cost));
}

VertexIndex RandomTurnOptimalMove(const SteepestPaths& paths,
                                  const GameGraph& g, VertexIndex v,
                                  Color mover) {
  RequireNonTerminal(g, v);
  return mover == Color::kBlue ? paths.toward_blue(v) : paths.toward_red(v);
}

VertexIndex RandomTurnOptimalMove(const CostTable& costs, const GameGraph& g,
                                  VertexIndex v, Color mover) {
  return RandomTurnOptimalMove(SteepestPaths(g, costs), g, v, mover);
}

IterateCache::IterateCache(GraphPtr g, bool upper) : graph_(std::move(g)) {
  CostTable first;
  first.kind = upper ? CostKind::kUpperIterate : CostKind::kLowerIterate;
  first.values.assign(graph_->size(), upper ? Rat(1) : Rat(0));
  first.values[graph_->blue()] = 0;
  first.values[graph_->red()] = 1;
  tables_.push_back(std::move(first));
}

const CostTable& IterateCache::at(std::size_t t) const {
  std::lock_guard<std::mutex> lock(mu_);
  while (tables_.size() <= t) {
    tables_.push_back(AveragingStep(*graph_, tables_.back()));
  }
  return tables_[t];
}

AgentPtr MakeFullKnowledgeAgent(GraphPtr g, CostTable costs, Color color,
                                Raise raise) {
  return std::make_shared<FullKnowledgeAgent>(std::move(g), std::move(costs),
                                              color, raise);
}

AgentPtr MakeSafetyRatioAgent(GraphPtr g, CostTable costs, Color color) {
  return std::make_shared<SafetyRatioAgent>(std::move(g), std::move(costs),
                                            color);
}

AgentPtr MakeUniformRandomAgent(GraphPtr g, Color color) {
  return std::make_shared<UniformRandomAgent>(std::move(g), color);
}

AgentPtr MakeAgentByName(std::string_view name, GraphPtr g,
                         const CostTable& costs, Color color) {
  if (name == "optimal") return MakeFullKnowledgeAgent(std::move(g), costs, color);
  if (name == "safety") return MakeSafetyRatioAgent(std::move(g), costs, color);
  if (name == "uniform-random-bid") return MakeUniformRandomAgent(std::move(g), color);
  throw std::invalid_argument("unknown agent '" + std::string(name) +
                              "' (expected optimal, safety or "
                              "uniform-random-bid)");
}

}  // namespace richman
