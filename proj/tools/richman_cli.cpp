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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "richman/richman.h"

namespace {

struct GraphDeleter {
  void operator()(rm_graph* g) const { rm_graph_free(g); }
};
struct CostsDeleter {
  void operator()(rm_costs* c) const { rm_costs_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { rm_string_free(s); }
};
using GraphHandle = std::unique_ptr<rm_graph, GraphDeleter>;
using CostsHandle = std::unique_ptr<rm_costs, CostsDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

int Report(rm_status status) {
  std::cerr << "error: " << rm_last_error() << "\n";
  return static_cast<int>(status);
}

void Print(char* text) {
  OwnedString owned(text);
  if (owned) std::cout << owned.get() << std::flush;
}

rm_format ParseFormat(const std::string& name) {
  return name == "table" ? RM_FORMAT_TABLE : RM_FORMAT_JSON;
}

// Loads and validates a graph file; prints the violations on failure.
int LoadValid(const std::string& path, rm_format fmt, GraphHandle& out) {
  rm_graph* raw = nullptr;
  if (rm_status s = rm_graph_load(path.c_str(), &raw); s != RM_OK) {
    return Report(s);
  }
  out.reset(raw);
  char* report = nullptr;
  rm_status s = rm_graph_validate(out.get(), fmt, &report);
  if (s != RM_OK) {
    Print(report);
    return Report(s);
  }
  rm_string_free(report);
  return 0;
}

int SolveExact(const GraphHandle& g, CostsHandle& out) {
  rm_costs* raw = nullptr;
  if (rm_status s = rm_solve_exact(g.get(), &raw); s != RM_OK) return Report(s);
  out.reset(raw);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Richman game solver and simulator"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string output = "json";
  app.add_option("--output", output, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  // solve
  auto* solve = app.add_subcommand("solve", "Compute Richman costs");
  std::string solve_file;
  bool exact = false;
  bool iterate = false;
  double tol = 1e-9;
  std::uint64_t max_iters = 100000;
  solve->add_option("file", solve_file, "graph file")->required();
  auto* exact_flag = solve->add_flag("--exact", exact, "exact rational costs (default)");
  auto* iterate_flag =
      solve->add_flag("--iterate", iterate, "upper/lower iteration brackets");
  exact_flag->excludes(iterate_flag);
  solve->add_option("--tol", tol, "iteration tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", max_iters, "iteration cap");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Play Richman games");
  std::string sim_file, start, blue_money, red_money;
  std::string blue_agent = "optimal", red_agent = "optimal", tiebreak = "fair";
  std::uint64_t runs = 1, seed = 0, max_moves = 0;
  unsigned threads = 1;
  bool trace = false;
  simulate->add_option("file", sim_file, "graph file")->required();
  simulate->add_option("--start", start, "start vertex")->required();
  simulate->add_option("--blue-money", blue_money, "Blue's bankroll, p/q")->required();
  simulate->add_option("--red-money", red_money, "Red's bankroll, p/q")->required();
  simulate->add_option("--blue", blue_agent, "optimal, safety or uniform-random-bid");
  simulate->add_option("--red", red_agent, "optimal, safety or uniform-random-bid");
  simulate->add_option("--tiebreak", tiebreak, "fair, always-blue or always-red");
  simulate->add_option("--runs", runs, "number of games");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--max-moves", max_moves, "move cap (0 = default)");
  simulate->add_option("--threads", threads, "worker threads");
  simulate->add_flag("--trace", trace, "print every step");

  // randomturn
  auto* randomturn =
      app.add_subcommand("randomturn", "Estimate R(v) with random-turn play");
  std::string rt_file, rt_start;
  std::uint64_t rt_runs = 10000, rt_seed = 0, rt_max_moves = 0;
  randomturn->add_option("file", rt_file, "graph file")->required();
  randomturn->add_option("--start", rt_start, "start vertex")->required();
  randomturn->add_option("--runs", rt_runs, "number of games");
  randomturn->add_option("--seed", rt_seed, "master seed");
  randomturn->add_option("--max-moves", rt_max_moves, "move cap (0 = default)");

  // series
  auto* series = app.add_subcommand("series", "Betting ladder for a series");
  unsigned k = 4;
  std::string bankroll, low, high;
  series->add_option("--k", k, "wins needed")->check(CLI::PositiveNumber);
  series->add_option("--bankroll", bankroll, "starting money, p/q");
  series->add_option("--low", low, "holding if the blue team wins (default 0)");
  series->add_option("--high", high, "holding if the red team wins (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return RM_ERR_USAGE;
  }
  const rm_format fmt = ParseFormat(output);

  if (*solve) {
    GraphHandle g;
    if (int rc = LoadValid(solve_file, fmt, g)) return rc;
    if (iterate) {
      char* text = nullptr;
      rm_status s = rm_solve_iterative(g.get(), tol, max_iters, fmt, &text);
      Print(text);
      return s == RM_OK ? 0 : Report(s);
    }
    CostsHandle costs;
    if (int rc = SolveExact(g, costs)) return rc;
    char* text = nullptr;
    if (rm_status s = rm_costs_render(costs.get(), fmt, &text); s != RM_OK) {
      return Report(s);
    }
    Print(text);
    return 0;
  }

  if (*simulate) {
    GraphHandle g;
    if (int rc = LoadValid(sim_file, fmt, g)) return rc;
    CostsHandle costs;
    if (int rc = SolveExact(g, costs)) return rc;
    rm_simulate_params p{};
    p.start = start.c_str();
    p.blue_money = blue_money.c_str();
    p.red_money = red_money.c_str();
    p.blue_agent = blue_agent.c_str();
    p.red_agent = red_agent.c_str();
    p.tiebreak = tiebreak.c_str();
    p.runs = runs;
    p.seed = seed;
    p.max_moves = max_moves;
    p.trace = trace ? 1 : 0;
    p.threads = threads;
    char* text = nullptr;
    if (rm_status s = rm_simulate(costs.get(), &p, fmt, nullptr, &text); s != RM_OK) {
      return Report(s);
    }
    Print(text);
    return 0;
  }

  if (*randomturn) {
    GraphHandle g;
    if (int rc = LoadValid(rt_file, fmt, g)) return rc;
    CostsHandle costs;
    if (int rc = SolveExact(g, costs)) return rc;
    char* text = nullptr;
    if (rm_status s = rm_random_turn(costs.get(), rt_start.c_str(), rt_runs,
                                     rt_seed, rt_max_moves, fmt, nullptr, &text);
        s != RM_OK) {
      return Report(s);
    }
    Print(text);
    return 0;
  }

  if (*series) {
    char* text = nullptr;
    if (rm_status s = rm_series(k, bankroll.empty() ? nullptr : bankroll.c_str(),
                                low.empty() ? nullptr : low.c_str(),
                                high.empty() ? nullptr : high.c_str(), fmt, &text);
        s != RM_OK) {
      return Report(s);
    }
    Print(text);
    return 0;
  }
  return RM_ERR_USAGE;
}
