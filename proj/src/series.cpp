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

#include "richman/series.hpp"

#include <vector>

#include "richman/solver.hpp"

namespace richman {

std::string SeriesVertexId(unsigned k, SeriesState state) {
  if (state.first >= k) return "b";
  if (state.second >= k) return "r";
  return std::to_string(state.first) + "-" + std::to_string(state.second);
}

GameGraph BuildSeriesGraph(unsigned k) {
  if (k == 0) throw std::invalid_argument("a series needs at least one win");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < k; ++j) {
      const VertexId here = SeriesVertexId(k, {i, j});
      edges.emplace_back(here, SeriesVertexId(k, {i + 1, j}));
      edges.emplace_back(here, SeriesVertexId(k, {i, j + 1}));
    }
  }
  return GameGraph("b", "r", std::move(edges));
}

BankrollMismatchError::BankrollMismatchError(const Money& given,
                                             const Money& required)
    : std::invalid_argument("bankroll " + ToString(given) +
                            " does not match the ladder's initial holding " +
                            ToString(required)),
      required_(required) {}

BetPlan ComputeBetPlan(const SeriesSpec& spec) {
  if (spec.target_low > spec.target_high) {
    throw std::invalid_argument("target_low must not exceed target_high");
  }
  const unsigned k = spec.wins_needed;
  const GameGraph g = BuildSeriesGraph(k);
  const CostTable costs = SolveExact(g);
  const Money spread = spec.target_high - spec.target_low;
  auto holding_of = [&](SeriesState s) -> Money {
    return spec.target_low + costs.at(g, SeriesVertexId(k, s)) * spread;
  };

  BetPlan plan;
  plan.wins_needed = k;
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < k; ++j) {
      plan.holding[{i, j}] = holding_of({i, j});
      plan.stake[{i, j}] = holding_of({i, j + 1}) - holding_of({i, j});
    }
  }
  plan.initial_holding = plan.holding.at({0, 0});
  if (spec.bankroll != plan.initial_holding) {
    throw BankrollMismatchError(spec.bankroll, plan.initial_holding);
  }
  return plan;
}

}  // namespace richman
