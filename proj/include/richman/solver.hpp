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

#ifndef RICHMAN_SOLVER_HPP_
#define RICHMAN_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "richman/graph.hpp"
#include "richman/rational.hpp"

namespace richman {

enum class CostKind { kExact, kUpperIterate, kLowerIterate, kApprox };

// Per-vertex Richman costs, indexed by VertexIndex. For iterates, `step` is
// the iteration count t.
struct CostTable {
  CostKind kind = CostKind::kExact;
  std::size_t step = 0;
  std::vector<Rat> values;

  const Rat& operator[](VertexIndex v) const { return values.at(v); }
  const Rat& at(const GameGraph& g, std::string_view id) const {
    return values.at(g.index(id));
  }
};

// Floating-point costs, e.g. the midpoint of an iterative bracket.
struct ApproxCostTable {
  std::vector<double> values;
};

// Brackets from the upper iteration R(v,t) and lower iteration R'(v,t).
struct ApproxSolve {
  CostTable upper;
  CostTable lower;
  std::size_t iterations = 0;
  Rat gap;  // max over v of upper(v) - lower(v)
  bool converged = false;

  ApproxCostTable midpoint() const;
};

struct IterativeOptions {
  double tol = 1e-9;
  std::size_t max_iters = 100000;
  // Once iterates need more than this many bits of denominator they are
  // rounded outward onto the 2^-grid_bits grid.
  unsigned grid_bits = 96;
};

class NotConvergedError : public std::runtime_error {
 public:
  explicit NotConvergedError(ApproxSolve partial);
  const ApproxSolve& partial() const { return partial_; }

 private:
  ApproxSolve partial_;
};

class LimitExceededError : public std::runtime_error {
 public:
  LimitExceededError(std::size_t non_terminals, std::size_t limit);
};

// One application of the averaging operator: terminals pinned to 0 and 1,
// every other v mapped to (max over S(v) + min over S(v)) / 2.
CostTable AveragingStep(const GameGraph& g, const CostTable& prev);

// R(.,0) .. R(.,t_max), starting from 1 at non-terminals. Exact.
std::vector<CostTable> IterateAbove(const GameGraph& g, std::size_t t_max);
// R'(.,0) .. R'(.,t_max), starting from 0 at non-terminals. Exact.
std::vector<CostTable> IterateBelow(const GameGraph& g, std::size_t t_max);

// Runs both iterations until the gap is within tol. Throws NotConvergedError
// (carrying the achieved bracket) if max_iters is reached first.
ApproxSolve SolveIterative(const GameGraph& g, const IterativeOptions& opts = {});

// True iff R(b)=0, R(r)=1, all values lie in [0,1] and
// 2R(v) = R+(v) + R-(v) holds exactly at every non-terminal v.
bool SatisfiesAveragingIdentity(const GameGraph& g, const CostTable& costs);

// Best rational approximation with denominator <= max_den.
Rat BestRationalApproximation(const Rat& x, const mpz_class& max_den);

// Snaps every value to its best rational approximation with denominator
// <= max_den and returns the table only if the averaging identity then holds.
std::optional<CostTable> Rationalize(const ApproxCostTable& approx,
                                     const GameGraph& g, std::uint64_t max_den);

// Choice of v- (lo) and v+ (hi) per non-terminal, indexed by VertexIndex.
// Entries for terminals are unused.
struct Policy {
  std::vector<VertexIndex> lo;
  std::vector<VertexIndex> hi;
};

inline constexpr std::size_t kPolicyEnumLimit = 10;

// Solves 2R(v) = R(lo(v)) + R(hi(v)) for every candidate policy until one
// whose solution lies in [0,1] and whose lo/hi really attain the min/max over
// S(v). Throws LimitExceededError if the graph has more than `limit`
// non-terminal vertices.
std::optional<CostTable> SolveByPolicyEnumeration(
    const GameGraph& g, std::size_t limit = kPolicyEnumLimit,
    Policy* policy_out = nullptr);

enum class ExactMethod { kRationalizedIteration, kPolicyEnumeration };

struct ExactOptions {
  IterativeOptions iterative{1e-12, 100000, 96};
  std::uint64_t max_den = 1000000;
  std::size_t policy_enum_limit = kPolicyEnumLimit;
};

// The unique Richman cost function. Tries rationalized iteration first
// (max_den, then 2*max_den) and falls back to policy enumeration.
CostTable SolveExact(const GameGraph& g, const ExactOptions& opts = {},
                     ExactMethod* method = nullptr);

struct ExtremalPair {
  VertexIndex minus;  // attains min over S(v)
  VertexIndex plus;   // attains max over S(v)
};

// Lexicographic tie-break. Throws std::invalid_argument at a terminal.
ExtremalPair ExtremalSuccessors(const GameGraph& g, const CostTable& costs,
                                VertexIndex v);

// Closure of v under edges (x,u) with costs(u) = min over S(x). Includes v.
// Sorted.
std::vector<VertexIndex> SteepestDescentClosure(const GameGraph& g,
                                                const CostTable& costs,
                                                VertexIndex v);
// Mirror image: edges (x,u) with costs(u) = max over S(x).
std::vector<VertexIndex> SteepestAscentClosure(const GameGraph& g,
                                               const CostTable& costs,
                                               VertexIndex v);

// Shortest paths to b along steepest-descent edges and to r along
// steepest-ascent edges. Used to pick, among equally steep successors, one
// that makes progress toward the mover's terminal.
class SteepestPaths {
 public:
  SteepestPaths(const GameGraph& g, const CostTable& costs);

  std::optional<std::size_t> distance_to_blue(VertexIndex v) const {
    return to_blue_.at(v);
  }
  std::optional<std::size_t> distance_to_red(VertexIndex v) const {
    return to_red_.at(v);
  }

  // A steepest-descent successor of non-terminal v with minimal distance to
  // b; lexicographic among equals (and when b is unreachable that way).
  VertexIndex toward_blue(VertexIndex v) const;
  // A steepest-ascent successor with minimal distance to r.
  VertexIndex toward_red(VertexIndex v) const;

 private:
  std::vector<std::vector<VertexIndex>> descent_;
  std::vector<std::vector<VertexIndex>> ascent_;
  std::vector<std::optional<std::size_t>> to_blue_;
  std::vector<std::optional<std::size_t>> to_red_;
};

}  // namespace richman

#endif  // RICHMAN_SOLVER_HPP_
