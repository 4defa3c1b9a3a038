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

#include "richman/richman.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "richman/graph.hpp"
#include "richman/render.hpp"
#include "richman/series.hpp"
#include "richman/simulator.hpp"
#include "richman/solver.hpp"
#include "richman/strategy.hpp"

struct rm_graph {
  richman::GraphPtr graph;
};

struct rm_costs {
  richman::GraphPtr graph;
  richman::CostTable table;
};

namespace {

thread_local std::string g_last_error;

rm_status Fail(rm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

richman::OutputFormat Format(rm_format fmt) {
  return fmt == RM_FORMAT_TABLE ? richman::OutputFormat::kTable
                                : richman::OutputFormat::kJson;
}

// Runs `body` and maps exceptions onto status codes.
template <typename Body>
rm_status Guard(Body&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const richman::GraphParseError& e) {
    return Fail(RM_ERR_PARSE, e.what());
  } catch (const richman::InvalidGraphError& e) {
    return Fail(RM_ERR_VALIDATION, e.what());
  } catch (const richman::NotConvergedError& e) {
    return Fail(RM_ERR_NOT_CONVERGED, e.what());
  } catch (const richman::LimitExceededError& e) {
    return Fail(RM_ERR_LIMIT_EXCEEDED, e.what());
  } catch (const richman::ProtocolViolation& e) {
    return Fail(RM_ERR_PROTOCOL, e.what());
  } catch (const richman::RationalParseError& e) {
    return Fail(RM_ERR_USAGE, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(RM_ERR_USAGE, e.what());
  } catch (const std::out_of_range& e) {
    return Fail(RM_ERR_USAGE, e.what());
  } catch (const std::exception& e) {
    return Fail(RM_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(RM_ERR_INTERNAL, "unknown error");
  }
}

richman::TiebreakPolicy ParseTiebreak(const char* name) {
  const std::string s = name ? name : "fair";
  if (s == "fair") return {richman::TiebreakKind::kFairCoin};
  if (s == "always-blue") return {richman::TiebreakKind::kAlwaysBlue};
  if (s == "always-red") return {richman::TiebreakKind::kAlwaysRed};
  throw std::invalid_argument("unknown tiebreak '" + s +
                              "' (expected fair, always-blue or always-red)");
}

const char* Required(const char* s, const char* what) {
  if (!s) throw std::invalid_argument(std::string("missing ") + what);
  return s;
}

}  // namespace

extern "C" {

const char* rm_last_error(void) { return g_last_error.c_str(); }

void rm_string_free(char* s) { std::free(s); }

rm_status rm_graph_parse(const char* text, rm_graph** out) {
  return Guard([&] {
    if (!text || !out) return Fail(RM_ERR_USAGE, "null argument");
    auto graph = std::make_shared<const richman::GameGraph>(
        richman::ParseGameGraph(text));
    *out = new rm_graph{std::move(graph)};
    return RM_OK;
  });
}

rm_status rm_graph_load(const char* path, rm_graph** out) {
  if (!path || !out) return Fail(RM_ERR_USAGE, "null argument");
  std::ifstream in(path, std::ios::binary);
  if (!in) return Fail(RM_ERR_PARSE, std::string("cannot read ") + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const rm_status status = rm_graph_parse(buffer.str().c_str(), out);
  if (status != RM_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return status;
}

rm_status rm_graph_series(unsigned k, rm_graph** out) {
  return Guard([&] {
    if (!out) return Fail(RM_ERR_USAGE, "null argument");
    auto graph = std::make_shared<const richman::GameGraph>(
        richman::BuildSeriesGraph(k));
    *out = new rm_graph{std::move(graph)};
    return RM_OK;
  });
}

void rm_graph_free(rm_graph* g) { delete g; }

size_t rm_graph_vertex_count(const rm_graph* g) {
  return g ? g->graph->size() : 0;
}

rm_status rm_graph_serialize(const rm_graph* g, char** out) {
  return Guard([&] {
    if (!g || !out) return Fail(RM_ERR_USAGE, "null argument");
    *out = Copy(richman::SerializeGameGraph(*g->graph));
    return RM_OK;
  });
}

rm_status rm_graph_validate(const rm_graph* g, rm_format fmt, char** report) {
  return Guard([&] {
    if (!g || !report) return Fail(RM_ERR_USAGE, "null argument");
    const richman::ValidationReport r = richman::Validate(*g->graph);
    *report = Copy(richman::RenderValidation(r, Format(fmt)));
    if (!r.ok()) {
      return Fail(RM_ERR_VALIDATION, richman::InvalidGraphError(r).what());
    }
    return RM_OK;
  });
}

rm_status rm_solve_exact(const rm_graph* g, rm_costs** out) {
  return Guard([&] {
    if (!g || !out) return Fail(RM_ERR_USAGE, "null argument");
    richman::CostTable table = richman::SolveExact(*g->graph);
    *out = new rm_costs{g->graph, std::move(table)};
    return RM_OK;
  });
}

rm_status rm_solve_iterative(const rm_graph* g, double tol, uint64_t max_iters,
                             rm_format fmt, char** out) {
  return Guard([&] {
    if (!g || !out) return Fail(RM_ERR_USAGE, "null argument");
    richman::IterativeOptions opts;
    opts.tol = tol;
    opts.max_iters = max_iters;
    try {
      const richman::ApproxSolve solve = richman::SolveIterative(*g->graph, opts);
      *out = Copy(richman::RenderApproxSolve(*g->graph, solve, Format(fmt)));
      return RM_OK;
    } catch (const richman::NotConvergedError& e) {
      *out = Copy(richman::RenderApproxSolve(*g->graph, e.partial(), Format(fmt)));
      return Fail(RM_ERR_NOT_CONVERGED, e.what());
    }
  });
}

rm_status rm_costs_render(const rm_costs* c, rm_format fmt, char** out) {
  return Guard([&] {
    if (!c || !out) return Fail(RM_ERR_USAGE, "null argument");
    *out = Copy(richman::RenderCostTable(*c->graph, c->table, Format(fmt)));
    return RM_OK;
  });
}

rm_status rm_costs_get(const rm_costs* c, const char* vertex, char** out) {
  return Guard([&] {
    if (!c || !vertex || !out) return Fail(RM_ERR_USAGE, "null argument");
    *out = Copy(richman::ToString(c->table.at(*c->graph, vertex)));
    return RM_OK;
  });
}

void rm_costs_free(rm_costs* c) { delete c; }

rm_status rm_simulate(const rm_costs* c, const rm_simulate_params* p,
                      rm_format fmt, rm_batch_stats* stats, char** out) {
  return Guard([&] {
    if (!c || !p || !out) return Fail(RM_ERR_USAGE, "null argument");
    const richman::GameGraph& g = *c->graph;
    richman::GameState start;
    start.position = g.index(Required(p->start, "start vertex"));
    start.blue_money = richman::ParseRational(Required(p->blue_money, "blue money"));
    start.red_money = richman::ParseRational(Required(p->red_money, "red money"));
    if (start.blue_money < 0 || start.red_money < 0) {
      throw std::invalid_argument("bankrolls must be nonnegative");
    }
    if (g.is_terminal(start.position)) {
      throw std::invalid_argument("start vertex " + g.id(start.position) +
                                  " is terminal");
    }
    const auto blue = richman::MakeAgentByName(
        Required(p->blue_agent, "blue agent"), c->graph, c->table,
        richman::Color::kBlue);
    const auto red = richman::MakeAgentByName(
        Required(p->red_agent, "red agent"), c->graph, c->table,
        richman::Color::kRed);
    const richman::TiebreakPolicy tiebreak = ParseTiebreak(p->tiebreak);
    const std::size_t cap =
        p->max_moves ? p->max_moves
                     : richman::DefaultRichmanMoveCap(g, richman::IsAcyclic(g));

    std::vector<richman::GameRecord> records;
    const richman::BatchStats batch = richman::RunBatch(
        g, *blue, *red, start, tiebreak, cap, p->runs, p->seed,
        p->threads ? p->threads : 1, p->trace ? &records : nullptr);
    std::string text;
    for (std::size_t i = 0; i < records.size(); ++i) {
      text += richman::RenderTrace(g, records[i], i, Format(fmt));
    }
    text += richman::RenderBatchStats(batch, Format(fmt));
    if (stats) {
      stats->runs = batch.runs;
      stats->blue_wins = batch.blue_wins;
      stats->red_wins = batch.red_wins;
      stats->unresolved = batch.unresolved;
    }
    *out = Copy(text);
    return RM_OK;
  });
}

rm_status rm_random_turn(const rm_costs* c, const char* start, uint64_t runs,
                         uint64_t seed, uint64_t max_moves, rm_format fmt,
                         rm_random_turn_result* result, char** out) {
  return Guard([&] {
    if (!c || !start || !out) return Fail(RM_ERR_USAGE, "null argument");
    const richman::GameGraph& g = *c->graph;
    const richman::VertexIndex s = g.index(start);
    const richman::RandomTurnEstimate est = richman::EstimateRandomTurnValue(
        g, c->table, s, runs, seed, max_moves);
    *out = Copy(richman::RenderRandomTurn(g, s, est, c->table[s], seed,
                                          Format(fmt)));
    if (result) {
      result->frequency = est.frequency;
      result->std_error = est.std_error;
      result->exact = richman::ToDouble(c->table[s]);
      result->red_wins = est.red_wins;
      result->unresolved = est.unresolved;
    }
    return RM_OK;
  });
}

rm_status rm_series(unsigned k, const char* bankroll, const char* low,
                    const char* high, rm_format fmt, char** out) {
  return Guard([&] {
    if (!out) return Fail(RM_ERR_USAGE, "null argument");
    richman::SeriesSpec spec;
    spec.wins_needed = k;
    if (low) spec.target_low = richman::ParseRational(low);
    if (high) spec.target_high = richman::ParseRational(high);
    if (bankroll) {
      spec.bankroll = richman::ParseRational(bankroll);
    } else {
      spec.bankroll = spec.target_low + (spec.target_high - spec.target_low) / 2;
    }
    *out = Copy(richman::RenderBetPlan(richman::ComputeBetPlan(spec), Format(fmt)));
    return RM_OK;
  });
}

}  // extern "C"
