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

#include "richman/solver.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace richman {

namespace {

CostTable InitialTable(const GameGraph& g, CostKind kind, const Rat& fill) {
  CostTable table;
  table.kind = kind;
  table.step = 0;
  table.values.assign(g.size(), fill);
  table.values[g.blue()] = 0;
  table.values[g.red()] = 1;
  return table;
}

struct MinMax {
  const Rat* min;
  const Rat* max;
};

MinMax SuccessorRange(const GameGraph& g, const CostTable& costs,
                      VertexIndex v) {
  const auto& succ = g.successors(v);
  const Rat* lo = &costs[succ.front()];
  const Rat* hi = lo;
  for (VertexIndex u : succ) {
    const Rat& c = costs[u];
    if (c < *lo) lo = &c;
    if (c > *hi) hi = &c;
  }
  return {lo, hi};
}

Rat MaxGap(const CostTable& upper, const CostTable& lower) {
  Rat gap = 0;
  for (std::size_t v = 0; v < upper.values.size(); ++v) {
    Rat d = upper.values[v] - lower.values[v];
    if (d > gap) gap = d;
  }
  return gap;
}

std::string NotConvergedMessage(const ApproxSolve& partial) {
  return "iteration did not converge after " +
         std::to_string(partial.iterations) +
         " steps (achieved gap " + std::to_string(ToDouble(partial.gap)) + ")";
}

std::vector<std::vector<VertexIndex>> SteepEdges(const GameGraph& g,
                                                 const CostTable& costs,
                                                 bool descent) {
  std::vector<std::vector<VertexIndex>> out(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (g.is_terminal(v)) continue;
    MinMax range = SuccessorRange(g, costs, v);
    const Rat& target = descent ? *range.min : *range.max;
    for (VertexIndex u : g.successors(v)) {
      if (costs[u] == target) out[v].push_back(u);
    }
  }
  return out;
}

std::vector<VertexIndex> Closure(const std::vector<std::vector<VertexIndex>>& adj,
                                 VertexIndex start) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<VertexIndex> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    VertexIndex x = queue.front();
    queue.pop_front();
    for (VertexIndex u : adj[x]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < adj.size(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::optional<std::size_t>> DistancesTo(
    const std::vector<std::vector<VertexIndex>>& adj, VertexIndex target) {
  std::vector<std::vector<VertexIndex>> pred(adj.size());
  for (VertexIndex v = 0; v < adj.size(); ++v) {
    for (VertexIndex u : adj[v]) pred[u].push_back(v);
  }
  std::vector<std::optional<std::size_t>> dist(adj.size());
  dist[target] = 0;
  std::deque<VertexIndex> queue{target};
  while (!queue.empty()) {
    VertexIndex u = queue.front();
    queue.pop_front();
    for (VertexIndex v : pred[u]) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

VertexIndex Nearest(const std::vector<VertexIndex>& candidates,
                    const std::vector<std::optional<std::size_t>>& dist) {
  VertexIndex best = candidates.front();
  for (VertexIndex u : candidates) {
    const auto& du = dist[u];
    const auto& db = dist[best];
    if (du && (!db || *du < *db)) best = u;
  }
  return best;
}

}  // namespace

ApproxCostTable ApproxSolve::midpoint() const {
  ApproxCostTable out;
  out.values.reserve(upper.values.size());
  for (std::size_t v = 0; v < upper.values.size(); ++v) {
    Rat mid = (upper.values[v] + lower.values[v]) / 2;
    out.values.push_back(ToDouble(mid));
  }
  return out;
}

NotConvergedError::NotConvergedError(ApproxSolve partial)
    : std::runtime_error(NotConvergedMessage(partial)),
      partial_(std::move(partial)) {}

LimitExceededError::LimitExceededError(std::size_t non_terminals,
                                       std::size_t limit)
    : std::runtime_error("exact solve needs policy enumeration but the graph "
                         "has " + std::to_string(non_terminals) +
                         " non-terminal vertices (limit " +
                         std::to_string(limit) + ")") {}

CostTable AveragingStep(const GameGraph& g, const CostTable& prev) {
  CostTable next;
  next.kind = prev.kind;
  next.step = prev.step + 1;
  next.values.resize(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (v == g.blue()) {
      next.values[v] = 0;
    } else if (v == g.red()) {
      next.values[v] = 1;
    } else {
      MinMax range = SuccessorRange(g, prev, v);
      next.values[v] = (*range.min + *range.max) / 2;
    }
  }
  return next;
}

std::vector<CostTable> IterateAbove(const GameGraph& g, std::size_t t_max) {
  RequireValid(g);
  std::vector<CostTable> out;
  out.reserve(t_max + 1);
  out.push_back(InitialTable(g, CostKind::kUpperIterate, 1));
  for (std::size_t t = 1; t <= t_max; ++t) {
    out.push_back(AveragingStep(g, out.back()));
  }
  return out;
}

std::vector<CostTable> IterateBelow(const GameGraph& g, std::size_t t_max) {
  RequireValid(g);
  std::vector<CostTable> out;
  out.reserve(t_max + 1);
  out.push_back(InitialTable(g, CostKind::kLowerIterate, 0));
  for (std::size_t t = 1; t <= t_max; ++t) {
    out.push_back(AveragingStep(g, out.back()));
  }
  return out;
}

ApproxSolve SolveIterative(const GameGraph& g, const IterativeOptions& opts) {
  RequireValid(g);
  if (!(opts.tol > 0)) throw std::invalid_argument("tol must be positive");
  const Rat tol = FromDouble(opts.tol);

  ApproxSolve solve;
  solve.upper = InitialTable(g, CostKind::kUpperIterate, 1);
  solve.lower = InitialTable(g, CostKind::kLowerIterate, 0);
  solve.gap = MaxGap(solve.upper, solve.lower);
  while (solve.gap > tol && solve.iterations < opts.max_iters) {
    solve.upper = AveragingStep(g, solve.upper);
    solve.lower = AveragingStep(g, solve.lower);
    for (auto& x : solve.upper.values) x = RoundUpToGrid(x, opts.grid_bits);
    for (auto& x : solve.lower.values) x = RoundDownToGrid(x, opts.grid_bits);
    ++solve.iterations;
    solve.gap = MaxGap(solve.upper, solve.lower);
  }
  solve.converged = solve.gap <= tol;
  if (!solve.converged) throw NotConvergedError(std::move(solve));
  return solve;
}

bool SatisfiesAveragingIdentity(const GameGraph& g, const CostTable& costs) {
  if (costs.values.size() != g.size()) return false;
  if (costs[g.blue()] != 0 || costs[g.red()] != 1) return false;
  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (costs[v] < 0 || costs[v] > 1) return false;
    if (g.is_terminal(v)) continue;
    MinMax range = SuccessorRange(g, costs, v);
    if (2 * costs[v] != *range.min + *range.max) return false;
  }
  return true;
}

Rat BestRationalApproximation(const Rat& x, const mpz_class& max_den) {
  if (max_den < 1) throw std::invalid_argument("max_den must be >= 1");
  if (x.get_den() <= max_den) return x;

  mpz_class p = x.get_num();
  mpz_class q = x.get_den();
  mpz_class h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_class h = a * h1 + h2;
    mpz_class k = a * k1 + k2;
    if (k > max_den) {
      // Best of the last convergent and the largest admissible
      // semiconvergent.
      mpz_class steps = (max_den - k2) / k1;
      Rat semi(steps * h1 + h2, steps * k1 + k2);
      semi.canonicalize();
      Rat conv(h1, k1);
      conv.canonicalize();
      Rat d_semi = abs(x - semi);
      Rat d_conv = abs(x - conv);
      if (d_semi < d_conv) return semi;
      return conv;
    }
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    mpz_class r = p - a * q;
    if (r == 0) {
      Rat out(h1, k1);
      out.canonicalize();
      return out;
    }
    p = q;
    q = r;
  }
}

std::optional<CostTable> Rationalize(const ApproxCostTable& approx,
                                     const GameGraph& g,
                                     std::uint64_t max_den) {
  if (approx.values.size() != g.size()) return std::nullopt;
  const mpz_class cap(static_cast<unsigned long>(max_den));
  CostTable table;
  table.kind = CostKind::kExact;
  table.values.reserve(g.size());
  for (double x : approx.values) {
    table.values.push_back(BestRationalApproximation(FromDouble(x), cap));
  }
  if (!SatisfiesAveragingIdentity(g, table)) return std::nullopt;
  return table;
}

CostTable SolveExact(const GameGraph& g, const ExactOptions& opts,
                     ExactMethod* method) {
  RequireValid(g);
  ApproxSolve approx;
  try {
    approx = SolveIterative(g, opts.iterative);
  } catch (const NotConvergedError& e) {
    approx = e.partial();
  }
  const ApproxCostTable mid = approx.midpoint();
  for (std::uint64_t den : {opts.max_den, 2 * opts.max_den}) {
    if (auto table = Rationalize(mid, g, den)) {
      if (method) *method = ExactMethod::kRationalizedIteration;
      return *table;
    }
  }
  auto table = SolveByPolicyEnumeration(g, opts.policy_enum_limit);
  if (!table) {
    throw std::logic_error("policy enumeration found no Richman cost function");
  }
  if (method) *method = ExactMethod::kPolicyEnumeration;
  return *table;
}

ExtremalPair ExtremalSuccessors(const GameGraph& g, const CostTable& costs,
                                VertexIndex v) {
  if (g.is_terminal(v)) {
    throw std::invalid_argument("vertex " + g.id(v) + " is terminal");
  }
  const auto& succ = g.successors(v);
  ExtremalPair out{succ.front(), succ.front()};
  for (VertexIndex u : succ) {
    if (costs[u] < costs[out.minus]) out.minus = u;
    if (costs[u] > costs[out.plus]) out.plus = u;
  }
  return out;
}

std::vector<VertexIndex> SteepestDescentClosure(const GameGraph& g,
                                                const CostTable& costs,
                                                VertexIndex v) {
  return Closure(SteepEdges(g, costs, true), v);
}

std::vector<VertexIndex> SteepestAscentClosure(const GameGraph& g,
                                               const CostTable& costs,
                                               VertexIndex v) {
  return Closure(SteepEdges(g, costs, false), v);
}

SteepestPaths::SteepestPaths(const GameGraph& g, const CostTable& costs)
    : descent_(SteepEdges(g, costs, true)),
      ascent_(SteepEdges(g, costs, false)),
      to_blue_(DistancesTo(descent_, g.blue())),
      to_red_(DistancesTo(ascent_, g.red())) {}

VertexIndex SteepestPaths::toward_blue(VertexIndex v) const {
  if (descent_.at(v).empty()) {
    throw std::invalid_argument("no move from a terminal vertex");
  }
  return Nearest(descent_[v], to_blue_);
}

VertexIndex SteepestPaths::toward_red(VertexIndex v) const {
  if (ascent_.at(v).empty()) {
    throw std::invalid_argument("no move from a terminal vertex");
  }
  return Nearest(ascent_[v], to_red_);
}

}  // namespace richman
