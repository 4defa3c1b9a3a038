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

#include <cmath>
#include <memory>

#include "doctest.h"
#include "richman/simulator.hpp"
#include "richman/solver.hpp"
#include "richman/strategy.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace richman;

namespace {

Rat Q(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

struct Setup {
  GraphPtr graph;
  CostTable costs;

  explicit Setup(GameGraph g)
      : graph(std::make_shared<const GameGraph>(std::move(g))),
        costs(SolveExact(*graph)) {}
  VertexIndex at(const char* id) const { return graph->index(id); }
  AgentPtr agent(const char* name, Color color) const {
    return MakeAgentByName(name, graph, costs, color);
  }
};

GameState State(VertexIndex v, Money blue, Money red) {
  return {v, std::move(blue), std::move(red)};
}

void CheckConservation(const GameRecord& rec) {
  const Money total = rec.start.blue_money + rec.start.red_money;
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const Step& s = rec.steps[i];
    const GameState before = rec.state_before(i);
    CHECK(s.blue_money_after + s.red_money_after == total);
    const Money& winning = s.bid_winner == Color::kBlue ? s.blue_bid : s.red_bid;
    CHECK(s.transfer == winning);
    if (s.bid_winner == Color::kBlue) {
      CHECK(s.blue_money_after == before.blue_money - s.transfer);
    } else {
      CHECK(s.red_money_after == before.red_money - s.transfer);
    }
  }
}

// Returns a fixed decision regardless of the observation.
class FixedAgent final : public Agent {
 public:
  FixedAgent(Color color, BidDecision d) : color_(color), d_(std::move(d)) {}
  std::string_view name() const override { return "fixed"; }
  Color color() const override { return color_; }
  Knowledge knowledge() const override { return Knowledge::kOwnBankroll; }
  BidDecision Decide(const Observation&) const override { return d_; }

 private:
  Color color_;
  BidDecision d_;
};

}  // namespace

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(DeriveSeed(1, 0) == DeriveSeed(1, 0));
  CHECK(DeriveSeed(1, 0) != DeriveSeed(1, 1));
  CHECK(DeriveSeed(1, 0) != DeriveSeed(2, 0));
}

TEST_CASE("star graph: the raised bid wins in one step") {
  Setup star(testing::Star());
  auto blue = star.agent("optimal", Color::kBlue);
  auto red = star.agent("optimal", Color::kRed);
  for (auto kind : {TiebreakKind::kFairCoin, TiebreakKind::kAlwaysBlue,
                    TiebreakKind::kAlwaysRed}) {
    GameRecord rec = PlayRichmanGame(*star.graph, *blue, *red,
                                     State(star.at("v"), Q(9, 10), Q(1, 10)),
                                     {kind}, 10, 1);
    CHECK(rec.outcome == Outcome::kBlueWins);
    REQUIRE(rec.steps.size() == 1);
    CHECK(rec.steps[0].blue_bid > Q(1, 2));
    CHECK_FALSE(rec.steps[0].tiebreak.has_value());
    CheckConservation(rec);
  }
  BatchStats stats = RunBatch(*star.graph, *blue, *red,
                              State(star.at("v"), Q(9, 10), Q(1, 10)), {}, 10,
                              100, 5);
  CHECK(stats.blue_wins == 100);
  CHECK(stats.move_histogram.at(1) == 100);
}

TEST_CASE("figure 1 from m: Blue with 3/5 outbids under always-red ties") {
  Setup fig1(testing::Figure1());
  auto blue = fig1.agent("optimal", Color::kBlue);
  auto red = fig1.agent("optimal", Color::kRed);
  GameRecord rec = PlayRichmanGame(*fig1.graph, *blue, *red,
                                   State(fig1.at("m"), Q(3, 5), Q(2, 5)),
                                   {TiebreakKind::kAlwaysRed}, 60, 7);
  CHECK(rec.outcome == Outcome::kBlueWins);
  CHECK(rec.steps.size() == 1);

  // Red holds only 2/5, so even the literal bid of 1/2 cannot be tied.
  auto literal = MakeFullKnowledgeAgent(fig1.graph, fig1.costs, Color::kBlue,
                                        Raise::kNone);
  rec = PlayRichmanGame(*fig1.graph, *literal, *red,
                        State(fig1.at("m"), Q(3, 5), Q(2, 5)),
                        {TiebreakKind::kAlwaysRed}, 60, 7);
  REQUIRE(rec.steps.size() == 1);
  CHECK(rec.steps[0].blue_bid == Q(1, 2));
  CHECK(rec.steps[0].red_bid == Q(2, 5));
  CHECK(rec.outcome == Outcome::kBlueWins);

  // With equal money the literal bids tie and the coin decides.
  rec = PlayRichmanGame(*fig1.graph, *literal, *red,
                        State(fig1.at("m"), Q(1, 2), Q(1, 2)),
                        {TiebreakKind::kAlwaysRed}, 60, 7);
  REQUIRE(rec.steps.size() == 1);
  CHECK(rec.steps[0].tiebreak == Color::kRed);
  CHECK(rec.outcome == Outcome::kRedWins);
}

TEST_CASE("figure 1 from v: safety against optimal keeps its ratio") {
  Setup fig1(testing::Figure1());
  auto blue = fig1.agent("safety", Color::kBlue);
  auto red = fig1.agent("optimal", Color::kRed);
  std::vector<GameRecord> records;
  BatchStats stats = RunBatch(*fig1.graph, *blue, *red,
                              State(fig1.at("v"), Q(7, 10), Q(3, 10)), {}, 64 * 6,
                              200, 1, 4, &records);
  CHECK(stats.red_wins == 0);
  CHECK(stats.blue_wins + stats.red_wins + stats.unresolved == 200);
  for (const GameRecord& rec : records) {
    CheckConservation(rec);
    Rat prev = *SafetyRatio(fig1.costs, rec.start.position, Q(7, 10));
    for (const Step& s : rec.steps) {
      auto ratio = SafetyRatio(fig1.costs, s.move_to, s.blue_money_after);
      if (!ratio) break;
      CHECK(*ratio >= prev);
      prev = *ratio;
    }
  }
}

TEST_CASE("batches are reproducible regardless of threads") {
  Setup fig1(testing::Figure1());
  auto blue = fig1.agent("uniform-random-bid", Color::kBlue);
  auto red = fig1.agent("uniform-random-bid", Color::kRed);
  std::vector<GameRecord> one, four;
  GameState start = State(fig1.at("v"), Q(1, 2), Q(1, 2));
  BatchStats a = RunBatch(*fig1.graph, *blue, *red, start, {}, 100, 64, 42, 1, &one);
  BatchStats b = RunBatch(*fig1.graph, *blue, *red, start, {}, 100, 64, 42, 4, &four);
  CHECK(a.blue_wins == b.blue_wins);
  CHECK(a.red_wins == b.red_wins);
  CHECK(a.move_histogram == b.move_histogram);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    REQUIRE(one[i].steps.size() == four[i].steps.size());
    for (std::size_t j = 0; j < one[i].steps.size(); ++j) {
      CHECK(one[i].steps[j].blue_bid == four[i].steps[j].blue_bid);
      CHECK(one[i].steps[j].red_bid == four[i].steps[j].red_bid);
      CHECK(one[i].steps[j].move_to == four[i].steps[j].move_to);
      CHECK(one[i].steps[j].tiebreak == four[i].steps[j].tiebreak);
    }
    CheckConservation(one[i]);
  }
  // A single game replays identically from its derived seed.
  GameRecord again = PlayRichmanGame(*fig1.graph, *blue, *red, start, {}, 100,
                                     DeriveSeed(42, 3));
  CHECK(again.steps.size() == one[3].steps.size());
  CHECK(again.outcome == one[3].outcome);
}

TEST_CASE("empty batch") {
  Setup star(testing::Star());
  auto blue = star.agent("optimal", Color::kBlue);
  auto red = star.agent("optimal", Color::kRed);
  BatchStats stats = RunBatch(*star.graph, *blue, *red,
                              State(star.at("v"), Q(1, 2), Q(1, 2)), {}, 10, 0, 0, 4);
  CHECK(stats.runs == 0);
  CHECK(stats.blue_wins + stats.red_wins + stats.unresolved == 0);
}

TEST_CASE("illegal starts and protocol violations") {
  Setup star(testing::Star());
  auto blue = star.agent("optimal", Color::kBlue);
  auto red = star.agent("optimal", Color::kRed);
  CHECK_THROWS_AS(PlayRichmanGame(*star.graph, *blue, *red,
                                  State(star.graph->blue(), Q(1), Q(1)), {}, 10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PlayRichmanGame(*star.graph, *blue, *red,
                                  State(star.at("v"), Q(-1), Q(1)), {}, 10, 0),
                  std::invalid_argument);

  FixedAgent greedy(Color::kRed, {Q(2), star.graph->red()});
  try {
    RunBatch(*star.graph, *blue, greedy, State(star.at("v"), Q(1, 2), Q(1, 2)), {},
             10, 3, 0);
    FAIL("expected a protocol violation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.offender() == Color::kRed);
    CHECK(e.game() == 0u);
  }
  FixedAgent wanderer(Color::kBlue, {Q(0), star.at("v")});
  CHECK_THROWS_AS(PlayRichmanGame(*star.graph, wanderer, *red,
                                  State(star.at("v"), Q(1, 2), Q(1, 2)), {}, 10, 0),
                  ProtocolViolation);
}

TEST_CASE("move cap yields unresolved") {
  Setup fig1(testing::Figure1());
  auto blue = fig1.agent("optimal", Color::kBlue);
  auto red = fig1.agent("optimal", Color::kRed);
  // Critical share, always-red ties: Red sends the token round the cycle.
  GameRecord rec = PlayRichmanGame(*fig1.graph, *blue, *red,
                                   State(fig1.at("v"), Q(1, 2), Q(1, 2)),
                                   {TiebreakKind::kAlwaysRed}, 25, 0);
  CHECK(rec.outcome == Outcome::kUnresolved);
  CHECK(rec.steps.size() == 25);
  CHECK(DefaultRichmanMoveCap(*fig1.graph, IsAcyclic(*fig1.graph)) == 64 * 6);
  CHECK_FALSE(IsAcyclic(*fig1.graph));
  CHECK(IsAcyclic(testing::PathGame()) == false);
  CHECK(IsAcyclic(testing::Star()));
}

TEST_CASE("random-turn games") {
  Setup fig1(testing::Figure1());
  GameRecord at_b = PlayRandomTurnGame(*fig1.graph, fig1.costs,
                                       fig1.graph->blue(), 10, 0);
  CHECK(at_b.outcome == Outcome::kBlueWins);
  CHECK(at_b.steps.empty());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameRecord rec = PlayRandomTurnGame(*fig1.graph, fig1.costs, fig1.at("m"), 10,
                                        seed);
    REQUIRE(rec.steps.size() == 1);
    CHECK(rec.outcome ==
          (rec.steps[0].tiebreak == Color::kRed ? Outcome::kRedWins
                                                : Outcome::kBlueWins));
    CHECK(rec.steps[0].blue_bid == 0);
  }

  RandomTurnEstimate absorbed = EstimateRandomTurnValue(
      *fig1.graph, fig1.costs, fig1.graph->red(), 10, 3);
  CHECK(absorbed.frequency == 1.0);
  CHECK_THROWS_AS(EstimateRandomTurnValue(*fig1.graph, fig1.costs, fig1.at("m"), 0, 3),
                  std::invalid_argument);
}

TEST_CASE("random-turn estimates agree with the exact costs") {
  struct Case {
    GameGraph graph;
    const char* start;
    double expected;
  };
  const Case cases[] = {
      {testing::Star(), "v", 0.5},
      {testing::PathGame(), "v1", 1.0 / 3},
      {testing::Figure1(), "m", 0.5},
      {testing::Figure1(), "v", 0.5},
  };
  for (const Case& c : cases) {
    CostTable costs = SolveExact(c.graph);
    RandomTurnEstimate est =
        EstimateRandomTurnValue(c.graph, costs, c.graph.index(c.start), 10000, 3);
    CAPTURE(c.start);
    CHECK(est.unresolved == 0);
    const double bound = 4 * std::sqrt(c.expected * (1 - c.expected) / 10000);
    CHECK(std::abs(est.frequency - c.expected) <= bound);
  }
}
