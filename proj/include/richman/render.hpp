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

#ifndef RICHMAN_RENDER_HPP_
#define RICHMAN_RENDER_HPP_

#include <string>

#include "richman/graph.hpp"
#include "richman/series.hpp"
#include "richman/simulator.hpp"
#include "richman/solver.hpp"

namespace richman {

enum class OutputFormat { kJson, kTable };

// Machine output is JSON with lexicographically ordered keys; rationals are
// rendered as decimal strings "num" / "den" next to a "float".
std::string RenderValidation(const ValidationReport& report, OutputFormat fmt);
std::string RenderCostTable(const GameGraph& g, const CostTable& costs,
                            OutputFormat fmt);
std::string RenderApproxSolve(const GameGraph& g, const ApproxSolve& solve,
                              OutputFormat fmt);
// One line per step, then an outcome line.
std::string RenderTrace(const GameGraph& g, const GameRecord& record,
                        std::size_t game_index, OutputFormat fmt);
std::string RenderBatchStats(const BatchStats& stats, OutputFormat fmt);
std::string RenderRandomTurn(const GameGraph& g, VertexIndex start,
                             const RandomTurnEstimate& est, const Rat& exact,
                             std::uint64_t seed, OutputFormat fmt);
std::string RenderBetPlan(const BetPlan& plan, OutputFormat fmt);

}  // namespace richman

#endif  // RICHMAN_RENDER_HPP_
