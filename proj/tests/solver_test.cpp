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

#include <random>

#include "doctest.h"
#include "richman/series.hpp"
#include "richman/solver.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace richman;

namespace {

Rat Q(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Hand-run R(v,t) / R'(v,t) on the figure-1 graph, order (v, m, c, a).
// Upper: v_t = (R(m) + R(c)) / 2 with c_t = a_{t-1}, a_t = v_{t-1}.
const Rat kFig1Upper[6][4] = {
    {Q(1), Q(1), Q(1), Q(1)},          {Q(1), Q(1, 2), Q(1), Q(1)},
    {Q(3, 4), Q(1, 2), Q(1), Q(1)},    {Q(3, 4), Q(1, 2), Q(1), Q(3, 4)},
    {Q(3, 4), Q(1, 2), Q(3, 4), Q(3, 4)}, {Q(5, 8), Q(1, 2), Q(3, 4), Q(3, 4)},
};
const Rat kFig1Lower[6][4] = {
    {Q(0), Q(0), Q(0), Q(0)},          {Q(0), Q(1, 2), Q(0), Q(0)},
    {Q(1, 4), Q(1, 2), Q(0), Q(0)},    {Q(1, 4), Q(1, 2), Q(0), Q(1, 4)},
    {Q(1, 4), Q(1, 2), Q(1, 4), Q(1, 4)}, {Q(3, 8), Q(1, 2), Q(1, 4), Q(1, 4)},
};

}  // namespace

TEST_CASE("star graph iterates") {
  GameGraph g = testing::Star();
  auto up = IterateAbove(g, 5);
  auto lo = IterateBelow(g, 5);
  CHECK(up[0].at(g, "v") == 1);
  CHECK(lo[0].at(g, "v") == 0);
  for (std::size_t t = 1; t <= 5; ++t) {
    CHECK(up[t].at(g, "v") == Q(1, 2));
    CHECK(lo[t].at(g, "v") == Q(1, 2));
    CHECK(up[t].step == t);
  }
}

TEST_CASE("figure-1 iterates match the hand-run recurrence") {
  GameGraph g = testing::Figure1();
  auto up = IterateAbove(g, 5);
  auto lo = IterateBelow(g, 5);
  const char* ids[4] = {"v", "m", "c", "a"};
  for (std::size_t t = 0; t <= 5; ++t) {
    for (int i = 0; i < 4; ++i) {
      CAPTURE(t);
      CAPTURE(ids[i]);
      CHECK(up[t].at(g, ids[i]) == kFig1Upper[t][i]);
      CHECK(lo[t].at(g, ids[i]) == kFig1Lower[t][i]);
    }
    CHECK(up[t].at(g, "b") == 0);
    CHECK(up[t].at(g, "r") == 1);
  }
  // R(c,1) = (1+1)/2 since a is still at 1; R(m,1) = 1/2.
  CHECK(up[1].at(g, "c") == 1);
  CHECK(up[1].at(g, "m") == Q(1, 2));
  // The cycle keeps v strictly above 1/2 for every finite t.
  auto long_run = IterateAbove(g, 60);
  for (const auto& table : long_run) CHECK(table.at(g, "v") > Q(1, 2));
}

TEST_CASE("path game iterates approach (1/3, 2/3) monotonically") {
  GameGraph g = testing::PathGame();
  // 2 R(v1) = 0 + R(v2), 2 R(v2) = R(v1) + 1.
  auto [x1, x2] = testing::Cramer2(Q(2), Q(-1), Q(-1), Q(2), Q(0), Q(1));
  REQUIRE(x1 == Q(1, 3));
  REQUIRE(x2 == Q(2, 3));
  auto up = IterateAbove(g, 80);
  auto lo = IterateBelow(g, 80);
  for (std::size_t t = 0; t + 1 < up.size(); ++t) {
    for (const char* id : {"v1", "v2"}) {
      CHECK(up[t + 1].at(g, id) <= up[t].at(g, id));
      CHECK(lo[t + 1].at(g, id) >= lo[t].at(g, id));
    }
    CHECK(up[t].at(g, "v1") >= x1);
    CHECK(lo[t].at(g, "v1") <= x1);
    CHECK(up[t].at(g, "v2") >= x2);
    CHECK(lo[t].at(g, "v2") <= x2);
  }
  CHECK(ToDouble(up.back().at(g, "v1") - x1) < 1e-12);
  CHECK(ToDouble(x2 - lo.back().at(g, "v2")) < 1e-12);
}

TEST_CASE("iteration rejects invalid graphs") {
  GameGraph dead = ParseGameGraph("blue b\nred r\nedge v x\n");
  CHECK_THROWS_AS(IterateAbove(dead, 3), InvalidGraphError);
  CHECK_THROWS_AS(SolveIterative(dead), InvalidGraphError);
  CHECK_THROWS_AS(SolveExact(dead), InvalidGraphError);
}

TEST_CASE("solve_iterative brackets") {
  SUBCASE("figure 1") {
    GameGraph g = testing::Figure1();
    ApproxSolve s = SolveIterative(g, {1e-9, 100000, 96});
    CHECK(s.converged);
    CHECK(ToDouble(s.gap) <= 1e-9);
    for (const char* id : {"v", "m", "a", "c"}) {
      CHECK(s.lower.at(g, id) <= Q(1, 2));
      CHECK(s.upper.at(g, id) >= Q(1, 2));
      CHECK(ToDouble(s.upper.at(g, id)) <= 0.5 + 1e-9);
      CHECK(ToDouble(s.lower.at(g, id)) >= 0.5 - 1e-9);
    }
  }
  SUBCASE("star converges after one step") {
    GameGraph g = testing::Star();
    ApproxSolve s = SolveIterative(g);
    CHECK(s.iterations == 1);
    CHECK(s.gap == 0);
  }
  SUBCASE("path game") {
    GameGraph g = testing::PathGame();
    ApproxSolve s = SolveIterative(g);
    CHECK(s.lower.at(g, "v1") <= Q(1, 3));
    CHECK(s.upper.at(g, "v1") >= Q(1, 3));
    CHECK(s.lower.at(g, "v2") <= Q(2, 3));
    CHECK(s.upper.at(g, "v2") >= Q(2, 3));
  }
  SUBCASE("not converged reports the achieved gap") {
    GameGraph g = testing::PathGame();
    try {
      SolveIterative(g, {1e-9, 3, 96});
      FAIL("expected NotConvergedError");
    } catch (const NotConvergedError& e) {
      CHECK(e.partial().iterations == 3);
      CHECK_FALSE(e.partial().converged);
      CHECK(ToDouble(e.partial().gap) > 1e-9);
    }
  }
  SUBCASE("tol must be positive") {
    CHECK_THROWS_AS(SolveIterative(testing::Star(), {0.0, 10, 96}),
                    std::invalid_argument);
  }
}

TEST_CASE("outward grid rounding keeps a valid bracket") {
  GameGraph g = testing::PathGame();
  ApproxSolve coarse = SolveIterative(g, {1e-2, 100000, 8});
  CHECK(coarse.lower.at(g, "v1") <= Q(1, 3));
  CHECK(coarse.upper.at(g, "v1") >= Q(1, 3));
  CHECK(RoundUpToGrid(Q(1, 3), 4) == Q(6, 16));
  CHECK(RoundDownToGrid(Q(1, 3), 4) == Q(5, 16));
  CHECK(RoundUpToGrid(Q(3, 8), 4) == Q(3, 8));
}

TEST_CASE("best rational approximation") {
  CHECK(BestRationalApproximation(FromDouble(0.49999999987), 64) == Q(1, 2));
  CHECK(BestRationalApproximation(FromDouble(0.333333333), 1000) == Q(1, 3));
  CHECK(BestRationalApproximation(Q(3, 7), 10) == Q(3, 7));
  // pi: 22/7 for den <= 7 and 355/113 for den <= 200.
  CHECK(BestRationalApproximation(FromDouble(3.141592653589793), 7) == Q(22, 7));
  CHECK(BestRationalApproximation(FromDouble(3.141592653589793), 200) ==
        Q(355, 113));
  // Semiconvergent case: best approximation of 0.7 with den <= 2 is 1/2.
  CHECK(BestRationalApproximation(FromDouble(0.7), 2) == Q(1, 2));
  CHECK(BestRationalApproximation(FromDouble(0.0), 5) == 0);
}

TEST_CASE("rationalize") {
  GameGraph path = testing::PathGame();
  ApproxSolve s = SolveIterative(path);
  auto table = Rationalize(s.midpoint(), path, 1000000);
  REQUIRE(table);
  CHECK(table->at(path, "v1") == Q(1, 3));
  CHECK(table->at(path, "v2") == Q(2, 3));

  // Values that round cleanly but break the averaging identity.
  ApproxCostTable wrong;
  wrong.values.assign(path.size(), 0.0);
  wrong.values[path.index("r")] = 1.0;
  wrong.values[path.index("v1")] = 0.25;
  wrong.values[path.index("v2")] = 0.75;
  CHECK_FALSE(Rationalize(wrong, path, 64));
}

TEST_CASE("solve_exact on the reference graphs") {
  GameGraph fig1 = testing::Figure1();
  CostTable c = SolveExact(fig1);
  CHECK(c.at(fig1, "b") == 0);
  CHECK(c.at(fig1, "r") == 1);
  for (const char* id : {"m", "v", "a", "c"}) CHECK(c.at(fig1, id) == Q(1, 2));
  CHECK(SatisfiesAveragingIdentity(fig1, c));

  GameGraph path = testing::PathGame();
  CostTable p = SolveExact(path);
  CHECK(p.at(path, "v1") == Q(1, 3));
  CHECK(p.at(path, "v2") == Q(2, 3));

  GameGraph series = BuildSeriesGraph(4);
  CostTable s = SolveExact(series);
  // Red needs 1, blue needs 4.
  CHECK(s.at(series, "0-3") == testing::PascalRedWins(1, 4));
  CHECK(s.at(series, "0-3") == Q(15, 16));
}

TEST_CASE("policy enumeration agrees on the reference graphs") {
  for (const GameGraph& g :
       {testing::Figure1(), testing::PathGame(), testing::Star()}) {
    Policy policy;
    auto table = SolveByPolicyEnumeration(g, kPolicyEnumLimit, &policy);
    REQUIRE(table);
    CHECK(SatisfiesAveragingIdentity(g, *table));
    CHECK(table->values == SolveExact(g).values);
    for (VertexIndex v : g.non_terminals()) {
      ExtremalPair ext = ExtremalSuccessors(g, *table, v);
      CHECK((*table)[policy.lo[v]] == (*table)[ext.minus]);
      CHECK((*table)[policy.hi[v]] == (*table)[ext.plus]);
    }
  }
}

TEST_CASE("policy enumeration limit") {
  std::mt19937_64 rng(3);
  GameGraph big = testing::RandomGraph(rng, 11, false);
  CHECK_THROWS_AS(SolveByPolicyEnumeration(big, 10), LimitExceededError);
  // Rationalized iteration does not need the fallback here.
  ExactMethod method;
  CostTable c = SolveExact(big, {}, &method);
  CHECK(method == ExactMethod::kRationalizedIteration);
  CHECK(SatisfiesAveragingIdentity(big, c));
}

TEST_CASE("solve_exact falls back to enumeration when rationalization fails") {
  GameGraph path = testing::PathGame();
  ExactOptions opts;
  opts.max_den = 1;  // only 0 and 1 representable
  ExactMethod method;
  CostTable c = SolveExact(path, opts, &method);
  CHECK(method == ExactMethod::kPolicyEnumeration);
  CHECK(c.at(path, "v1") == Q(1, 3));

  opts.policy_enum_limit = 1;
  CHECK_THROWS_AS(SolveExact(path, opts), LimitExceededError);
}

TEST_CASE("cost zero does not imply the blue terminal") {
  GameGraph g = ParseGameGraph("blue b\nred r\nedge w b\nedge v w\nedge v r\n");
  CostTable c = SolveExact(g);
  CHECK(c.at(g, "w") == 0);
  CHECK(c.at(g, "v") == Q(1, 2));
}

TEST_CASE("extremal successors") {
  GameGraph fig1 = testing::Figure1();
  CostTable c = SolveExact(fig1);
  ExtremalPair m = ExtremalSuccessors(fig1, c, fig1.index("m"));
  CHECK(fig1.id(m.minus) == "b");
  CHECK(fig1.id(m.plus) == "r");
  ExtremalPair v = ExtremalSuccessors(fig1, c, fig1.index("v"));
  CHECK(fig1.id(v.minus) == "c");
  CHECK(fig1.id(v.plus) == "c");
  CHECK_THROWS_AS(ExtremalSuccessors(fig1, c, fig1.blue()), std::invalid_argument);

  GameGraph path = testing::PathGame();
  CostTable p = SolveExact(path);
  ExtremalPair v2 = ExtremalSuccessors(path, p, path.index("v2"));
  CHECK(path.id(v2.minus) == "v1");
  CHECK(path.id(v2.plus) == "r");
}

TEST_CASE("steepest descent closure") {
  GameGraph fig1 = testing::Figure1();
  CostTable c = SolveExact(fig1);
  auto closure_ids = [&](std::vector<VertexIndex> vs) {
    std::vector<VertexId> out;
    for (VertexIndex v : vs) out.push_back(fig1.id(v));
    return out;
  };
  CHECK(closure_ids(SteepestDescentClosure(fig1, c, fig1.index("m"))) ==
        std::vector<VertexId>{"b", "m"});
  CHECK(closure_ids(SteepestDescentClosure(fig1, c, fig1.red())) ==
        std::vector<VertexId>{"r"});
  CHECK(closure_ids(SteepestAscentClosure(fig1, c, fig1.index("m"))) ==
        std::vector<VertexId>{"m", "r"});
}

TEST_CASE("steepest paths prefer progress toward the mover's terminal") {
  GameGraph fig1 = testing::Figure1();
  CostTable c = SolveExact(fig1);
  SteepestPaths paths(fig1, c);
  CHECK(fig1.id(paths.toward_blue(fig1.index("v"))) == "m");
  CHECK(fig1.id(paths.toward_red(fig1.index("v"))) == "m");
  CHECK(paths.distance_to_blue(fig1.index("v")) == 2u);
  CHECK(paths.distance_to_blue(fig1.index("c")) == 4u);
  CHECK(paths.distance_to_red(fig1.blue()) == std::nullopt);
}

TEST_CASE("random corpus: identity, agreement and closures reaching the terminals") {
  auto corpus = testing::RandomCorpus(60, 99, 8, false);
  for (const auto& entry : corpus) {
    const GameGraph& g = entry.graph;
    CostTable exact = SolveExact(g);
    REQUIRE(SatisfiesAveragingIdentity(g, exact));
    auto enumerated = SolveByPolicyEnumeration(g);
    REQUIRE(enumerated);
    CHECK(enumerated->values == exact.values);
    if (entry.acyclic) {
      auto oracle = testing::BackwardInduction(g);
      REQUIRE(oracle);
      CHECK(*oracle == exact.values);
    }
    for (VertexIndex v = 0; v < g.size(); ++v) {
      auto down = SteepestDescentClosure(g, exact, v);
      auto up = SteepestAscentClosure(g, exact, v);
      if (exact[v] < 1) {
        CHECK(std::binary_search(down.begin(), down.end(), g.blue()));
      }
      if (exact[v] > 0) {
        CHECK(std::binary_search(up.begin(), up.end(), g.red()));
      }
    }
  }
}
