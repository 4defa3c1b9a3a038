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

#include "richman/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace richman {

namespace {

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-step channels.
constexpr std::uint64_t kCoinChannel = 0;
constexpr std::uint64_t kBlueChannel = 1;
constexpr std::uint64_t kRedChannel = 2;

std::uint64_t StepStream(std::uint64_t seed, std::size_t step,
                         std::uint64_t channel) {
  return DeriveSeed(DeriveSeed(seed, step), channel);
}

Color FlipCoin(std::uint64_t seed, std::size_t step) {
  return (StepStream(seed, step, kCoinChannel) >> 63) ? Color::kRed
                                                      : Color::kBlue;
}

void CheckDecision(const GameGraph& g, const Agent& agent, VertexIndex v,
                   const Money& bankroll, const BidDecision& d) {
  if (d.bid < 0 || d.bid > bankroll) {
    throw ProtocolViolation(agent.color(),
                            std::string(ToString(agent.color())) + " agent '" +
                                std::string(agent.name()) + "' bid " +
                                ToString(d.bid) + " with bankroll " +
                                ToString(bankroll));
  }
  const auto& succ = g.successors(v);
  if (!std::binary_search(succ.begin(), succ.end(), d.move_to)) {
    throw ProtocolViolation(
        agent.color(), std::string(ToString(agent.color())) + " agent '" +
                           std::string(agent.name()) + "' chose illegal move " +
                           g.id(v) + "->" +
                           (d.move_to < g.size() ? g.id(d.move_to)
                                                 : std::to_string(d.move_to)));
  }
}

Observation Observe(const Agent& agent, VertexIndex v, const Money& own,
                    const Money& other, std::uint64_t entropy) {
  Observation obs;
  obs.color = agent.color();
  obs.position = v;
  obs.own_money = own;
  if (agent.knowledge() == Knowledge::kFull) obs.opponent_money = other;
  obs.entropy = entropy;
  return obs;
}

Outcome OutcomeAt(const GameGraph& g, VertexIndex v) {
  if (v == g.blue()) return Outcome::kBlueWins;
  if (v == g.red()) return Outcome::kRedWins;
  return Outcome::kUnresolved;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

std::string_view ToString(Outcome outcome) {
  switch (outcome) {
    case Outcome::kBlueWins:
      return "BlueWins";
    case Outcome::kRedWins:
      return "RedWins";
    case Outcome::kUnresolved:
      return "Unresolved";
  }
  return "Unknown";
}

GameState GameRecord::state_before(std::size_t i) const {
  if (i == 0) return start;
  const Step& prev = steps.at(i - 1);
  return {prev.move_to, prev.blue_money_after, prev.red_money_after};
}

ProtocolViolation::ProtocolViolation(Color offender, const std::string& what,
                                     std::optional<std::size_t> game)
    : std::runtime_error(game ? "game " + std::to_string(*game) + ": " + what
                              : what),
      offender_(offender),
      game_(game) {}

bool IsAcyclic(const GameGraph& g) {
  // Kahn's algorithm over successor edges.
  std::vector<std::size_t> indegree(g.size(), 0);
  for (VertexIndex v = 0; v < g.size(); ++v) {
    for (VertexIndex u : g.successors(v)) ++indegree[u];
  }
  std::vector<VertexIndex> ready;
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    VertexIndex v = ready.back();
    ready.pop_back();
    ++seen;
    for (VertexIndex u : g.successors(v)) {
      if (--indegree[u] == 0) ready.push_back(u);
    }
  }
  return seen == g.size();
}

std::size_t DefaultRichmanMoveCap(const GameGraph& g, bool acyclic) {
  return (acyclic ? 10 : 64) * g.size();
}

std::size_t DefaultRandomTurnMoveCap(const GameGraph& g) { return 64 * g.size(); }

GameRecord PlayRichmanGame(const GameGraph& g, const Agent& blue,
                           const Agent& red, const GameState& start,
                           TiebreakPolicy tiebreak, std::size_t max_moves,
                           std::uint64_t seed) {
  if (start.position >= g.size()) {
    throw std::invalid_argument("start vertex out of range");
  }
  if (g.is_terminal(start.position)) {
    throw std::invalid_argument("Richman games cannot start at a terminal (" +
                                g.id(start.position) + ")");
  }
  if (start.blue_money < 0 || start.red_money < 0) {
    throw std::invalid_argument("bankrolls must be nonnegative");
  }
  if (blue.color() != Color::kBlue || red.color() != Color::kRed) {
    throw std::invalid_argument("agents are seated in the wrong colors");
  }

  GameRecord record;
  record.start = start;
  record.max_moves = max_moves;
  VertexIndex v = start.position;
  Money blue_money = start.blue_money;
  Money red_money = start.red_money;

  while (!g.is_terminal(v) && record.steps.size() < max_moves) {
    const std::size_t index = record.steps.size();
    // Both decisions are taken before either is looked at.
    const BidDecision b = blue.Decide(
        Observe(blue, v, blue_money, red_money,
                StepStream(seed, index, kBlueChannel)));
    const BidDecision r = red.Decide(
        Observe(red, v, red_money, blue_money,
                StepStream(seed, index, kRedChannel)));
    CheckDecision(g, blue, v, blue_money, b);
    CheckDecision(g, red, v, red_money, r);

    Step step;
    step.position = v;
    step.blue_bid = b.bid;
    step.red_bid = r.bid;
    if (b.bid > r.bid) {
      step.bid_winner = Color::kBlue;
    } else if (r.bid > b.bid) {
      step.bid_winner = Color::kRed;
    } else {
      switch (tiebreak.kind) {
        case TiebreakKind::kAlwaysBlue:
          step.tiebreak = Color::kBlue;
          break;
        case TiebreakKind::kAlwaysRed:
          step.tiebreak = Color::kRed;
          break;
        case TiebreakKind::kFairCoin:
          step.tiebreak = FlipCoin(seed, index);
          break;
      }
      step.bid_winner = *step.tiebreak;
    }
    if (step.bid_winner == Color::kBlue) {
      step.transfer = b.bid;
      step.move_to = b.move_to;
      blue_money -= b.bid;
      red_money += b.bid;
    } else {
      step.transfer = r.bid;
      step.move_to = r.move_to;
      red_money -= r.bid;
      blue_money += r.bid;
    }
    step.blue_money_after = blue_money;
    step.red_money_after = red_money;
    v = step.move_to;
    record.steps.push_back(std::move(step));
  }
  record.final_position = v;
  record.outcome = OutcomeAt(g, v);
  return record;
}

BatchStats RunBatch(const GameGraph& g, const Agent& blue, const Agent& red,
                    const GameState& start, TiebreakPolicy tiebreak,
                    std::size_t max_moves, std::size_t runs,
                    std::uint64_t master_seed, std::size_t threads,
                    std::vector<GameRecord>* records) {
  std::vector<GameRecord> games(runs);
  std::vector<std::exception_ptr> errors(runs);
  auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < runs; i += stride) {
      try {
        games[i] = PlayRichmanGame(g, blue, red, start, tiebreak, max_moves,
                                   DeriveSeed(master_seed, i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, runs));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < runs; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ProtocolViolation& e) {
      throw ProtocolViolation(e.offender(), e.what(), i);
    }
  }

  BatchStats stats;
  stats.runs = runs;
  stats.master_seed = master_seed;
  for (const GameRecord& rec : games) {
    switch (rec.outcome) {
      case Outcome::kBlueWins:
        ++stats.blue_wins;
        break;
      case Outcome::kRedWins:
        ++stats.red_wins;
        break;
      case Outcome::kUnresolved:
        ++stats.unresolved;
        break;
    }
    ++stats.move_histogram[rec.steps.size()];
  }
  if (records) *records = std::move(games);
  return stats;
}

namespace {

GameRecord RandomTurnGame(const GameGraph& g, const SteepestPaths& paths,
                          VertexIndex start, std::size_t max_moves,
                          std::uint64_t seed) {
  GameRecord record;
  record.start = {start, Money(0), Money(0)};
  record.max_moves = max_moves;
  VertexIndex v = start;
  while (!g.is_terminal(v) && record.steps.size() < max_moves) {
    Step step;
    step.position = v;
    step.tiebreak = FlipCoin(seed, record.steps.size());
    step.bid_winner = *step.tiebreak;
    step.move_to = RandomTurnOptimalMove(paths, g, v, step.bid_winner);
    v = step.move_to;
    record.steps.push_back(std::move(step));
  }
  record.final_position = v;
  record.outcome = OutcomeAt(g, v);
  return record;
}

}  // namespace

GameRecord PlayRandomTurnGame(const GameGraph& g, const CostTable& costs,
                              VertexIndex start, std::size_t max_moves,
                              std::uint64_t seed) {
  if (start >= g.size()) throw std::invalid_argument("start vertex out of range");
  return RandomTurnGame(g, SteepestPaths(g, costs), start, max_moves, seed);
}

RandomTurnEstimate EstimateRandomTurnValue(const GameGraph& g,
                                           const CostTable& costs,
                                           VertexIndex start, std::size_t n,
                                           std::uint64_t master_seed,
                                           std::size_t max_moves) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (start >= g.size()) throw std::invalid_argument("start vertex out of range");
  if (max_moves == 0) max_moves = DefaultRandomTurnMoveCap(g);
  const SteepestPaths paths(g, costs);
  RandomTurnEstimate est;
  est.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    const GameRecord rec =
        RandomTurnGame(g, paths, start, max_moves, DeriveSeed(master_seed, i));
    switch (rec.outcome) {
      case Outcome::kBlueWins:
        ++est.blue_wins;
        break;
      case Outcome::kRedWins:
        ++est.red_wins;
        break;
      case Outcome::kUnresolved:
        ++est.unresolved;
        break;
    }
  }
  est.frequency = static_cast<double>(est.red_wins) / static_cast<double>(n);
  est.std_error = std::sqrt(est.frequency * (1 - est.frequency) /
                            static_cast<double>(n));
  return est;
}

}  // namespace richman
