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

#include "richman/render.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace richman {

namespace {

using nlohmann::json;

json RatJson(const Rat& x) {
  return json{{"num", x.get_num().get_str()},
              {"den", x.get_den().get_str()},
              {"float", ToDouble(x)}};
}

json CostsJson(const GameGraph& g, const CostTable& costs) {
  json out = json::object();
  for (VertexIndex v = 0; v < g.size(); ++v) out[g.id(v)] = RatJson(costs[v]);
  return out;
}

std::string_view KindName(CostKind kind) {
  switch (kind) {
    case CostKind::kExact:
      return "exact";
    case CostKind::kUpperIterate:
      return "upper-iterate";
    case CostKind::kLowerIterate:
      return "lower-iterate";
    case CostKind::kApprox:
      return "approx";
  }
  return "unknown";
}

std::string Dump(const json& j) { return j.dump() + "\n"; }

std::string FormatDouble(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

json OptionalColor(const std::optional<Color>& c) {
  if (!c) return nullptr;
  return std::string(ToString(*c));
}

}  // namespace

std::string RenderValidation(const ValidationReport& report, OutputFormat fmt) {
  if (fmt == OutputFormat::kTable) {
    std::string out = report.ok() ? "graph ok\n" : "graph invalid\n";
    for (const auto& v : report.violations) {
      out += "  " + std::string(ToString(v.code)) + "(" + v.where + "): " +
             v.message + "\n";
    }
    return out;
  }
  json j;
  j["ok"] = report.ok();
  j["violations"] = json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back(
        {{"code", ToString(v.code)}, {"where", v.where}, {"message", v.message}});
  }
  return Dump(j);
}

std::string RenderCostTable(const GameGraph& g, const CostTable& costs,
                            OutputFormat fmt) {
  if (fmt == OutputFormat::kTable) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "vertex" << std::setw(16) << "cost"
        << "float\n";
    for (VertexIndex v = 0; v < g.size(); ++v) {
      out << std::setw(12) << g.id(v) << std::setw(16) << ToString(costs[v])
          << FormatDouble(ToDouble(costs[v])) << "\n";
    }
    return out.str();
  }
  json j;
  j["kind"] = KindName(costs.kind);
  j["costs"] = CostsJson(g, costs);
  return Dump(j);
}

std::string RenderApproxSolve(const GameGraph& g, const ApproxSolve& solve,
                              OutputFormat fmt) {
  if (fmt == OutputFormat::kTable) {
    std::ostringstream out;
    out << "iterations " << solve.iterations << "  gap "
        << FormatDouble(ToDouble(solve.gap))
        << (solve.converged ? "  converged\n" : "  NOT converged\n");
    out << std::left << std::setw(12) << "vertex" << std::setw(20) << "lower"
        << "upper\n";
    for (VertexIndex v = 0; v < g.size(); ++v) {
      out << std::setw(12) << g.id(v) << std::setw(20)
          << FormatDouble(ToDouble(solve.lower[v]))
          << FormatDouble(ToDouble(solve.upper[v])) << "\n";
    }
    return out.str();
  }
  json j;
  j["kind"] = "approx";
  j["iterations"] = solve.iterations;
  j["gap"] = ToDouble(solve.gap);
  j["converged"] = solve.converged;
  j["upper"] = CostsJson(g, solve.upper);
  j["lower"] = CostsJson(g, solve.lower);
  return Dump(j);
}

std::string RenderTrace(const GameGraph& g, const GameRecord& record,
                        std::size_t game_index, OutputFormat fmt) {
  std::string out;
  for (std::size_t i = 0; i < record.steps.size(); ++i) {
    const Step& s = record.steps[i];
    if (fmt == OutputFormat::kTable) {
      out += "game " + std::to_string(game_index) + " step " +
             std::to_string(i) + ": at " + g.id(s.position) + " blue bids " +
             ToString(s.blue_bid) + ", red bids " + ToString(s.red_bid) +
             (s.tiebreak ? ", tie to " + std::string(ToString(*s.tiebreak))
                         : std::string()) +
             "; " + std::string(ToString(s.bid_winner)) + " pays " +
             ToString(s.transfer) + " and moves to " + g.id(s.move_to) +
             " (blue " + ToString(s.blue_money_after) + ", red " +
             ToString(s.red_money_after) + ")\n";
      continue;
    }
    json j;
    j["game"] = game_index;
    j["step"] = i;
    j["position"] = g.id(s.position);
    j["blue_bid"] = ToString(s.blue_bid);
    j["red_bid"] = ToString(s.red_bid);
    j["tiebreak"] = OptionalColor(s.tiebreak);
    j["winner"] = ToString(s.bid_winner);
    j["transfer"] = ToString(s.transfer);
    j["move_to"] = g.id(s.move_to);
    j["blue_money"] = ToString(s.blue_money_after);
    j["red_money"] = ToString(s.red_money_after);
    out += Dump(j);
  }
  if (fmt == OutputFormat::kTable) {
    out += "game " + std::to_string(game_index) + ": " +
           std::string(ToString(record.outcome)) + " after " +
           std::to_string(record.steps.size()) + " moves\n";
  } else {
    json j;
    j["game"] = game_index;
    j["outcome"] = ToString(record.outcome);
    j["moves"] = record.steps.size();
    j["final_position"] = g.id(record.final_position);
    out += Dump(j);
  }
  return out;
}

std::string RenderBatchStats(const BatchStats& stats, OutputFormat fmt) {
  if (fmt == OutputFormat::kTable) {
    std::ostringstream out;
    out << "runs " << stats.runs << "  blue_wins " << stats.blue_wins
        << "  red_wins " << stats.red_wins << "  unresolved " << stats.unresolved
        << "  seed " << stats.master_seed << "\n";
    out << "moves:";
    for (const auto& [moves, count] : stats.move_histogram) {
      out << " " << moves << "x" << count;
    }
    out << "\n";
    return out.str();
  }
  json j;
  j["runs"] = stats.runs;
  j["blue_wins"] = stats.blue_wins;
  j["red_wins"] = stats.red_wins;
  j["unresolved"] = stats.unresolved;
  j["seed"] = stats.master_seed;
  json hist = json::object();
  for (const auto& [moves, count] : stats.move_histogram) {
    hist[std::to_string(moves)] = count;
  }
  j["move_histogram"] = hist;
  return Dump(j);
}

std::string RenderRandomTurn(const GameGraph& g, VertexIndex start,
                             const RandomTurnEstimate& est, const Rat& exact,
                             std::uint64_t seed, OutputFormat fmt) {
  if (fmt == OutputFormat::kTable) {
    std::ostringstream out;
    out << "start " << g.id(start) << "  runs " << est.n << "  seed " << seed
        << "\n"
        << "red-win frequency " << FormatDouble(est.frequency) << " +- "
        << FormatDouble(est.std_error) << "\n"
        << "exact R(" << g.id(start) << ") = " << ToString(exact) << " ("
        << FormatDouble(ToDouble(exact)) << ")\n"
        << "unresolved " << est.unresolved << "\n";
    return out.str();
  }
  json j;
  j["start"] = g.id(start);
  j["runs"] = est.n;
  j["seed"] = seed;
  j["red_wins"] = est.red_wins;
  j["blue_wins"] = est.blue_wins;
  j["unresolved"] = est.unresolved;
  j["frequency"] = est.frequency;
  j["stderr"] = est.std_error;
  j["exact"] = RatJson(exact);
  return Dump(j);
}

std::string RenderBetPlan(const BetPlan& plan, OutputFormat fmt) {
  auto state_name = [](const SeriesState& s) {
    return std::to_string(s.first) + "-" + std::to_string(s.second);
  };
  if (fmt == OutputFormat::kTable) {
    std::ostringstream out;
    out << "first to " << plan.wins_needed << "; start with "
        << ToString(plan.initial_holding) << "\n";
    out << std::left << std::setw(8) << "state" << std::setw(14) << "holding"
        << "stake\n";
    for (const auto& [state, holding] : plan.holding) {
      out << std::setw(8) << state_name(state) << std::setw(14)
          << ToString(holding) << ToString(plan.stake.at(state)) << "\n";
    }
    return out.str();
  }
  json j;
  j["wins_needed"] = plan.wins_needed;
  j["initial_holding"] = RatJson(plan.initial_holding);
  json states = json::object();
  for (const auto& [state, holding] : plan.holding) {
    states[state_name(state)] = {{"holding", RatJson(holding)},
                                 {"stake", RatJson(plan.stake.at(state))}};
  }
  j["states"] = states;
  return Dump(j);
}

}  // namespace richman
