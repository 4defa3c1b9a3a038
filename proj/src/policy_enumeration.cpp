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

#include <algorithm>
#include <utility>

#include "richman/solver.hpp"

namespace richman {

namespace {

using Wide = __int128;

// Fraction-free Gauss-Jordan elimination. Every intermediate entry is a minor
// of the augmented matrix, so for the small systems built here (at most
// kPolicyEnumLimit unknowns, rows with at most three nonzeros of magnitude
// <= 2) everything stays far inside 128 bits.
struct LinearSystem {
  std::size_t n = 0;
  std::vector<Wide> a;  // n x (n + 1), row-major, last column is the rhs

  Wide& at(std::size_t i, std::size_t j) { return a[i * (n + 1) + j]; }
};

// On success, returns det > 0 and numerators x with A x = det * rhs.
bool SolveFractionFree(LinearSystem sys, Wide& det, std::vector<Wide>& x) {
  const std::size_t n = sys.n;
  const LinearSystem original = sys;
  Wide prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && sys.at(pivot, k) == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != k) {
      for (std::size_t j = 0; j <= n; ++j) {
        std::swap(sys.at(k, j), sys.at(pivot, j));
      }
    }
    const Wide pkk = sys.at(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Wide pik = sys.at(i, k);
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == k) continue;
        sys.at(i, j) = (pkk * sys.at(i, j) - pik * sys.at(k, j)) / prev;
      }
      sys.at(i, k) = 0;
    }
    prev = pkk;
  }
  det = sys.at(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sys.at(i, i) != det) return false;
  }
  x.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) x[i] = sys.at(i, n);
  if (det < 0) {
    det = -det;
    for (auto& xi : x) xi = -xi;
  }
  // Exact residual check against the unreduced system.
  LinearSystem check = original;
  for (std::size_t i = 0; i < n; ++i) {
    Wide lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += check.at(i, j) * x[j];
    if (lhs != det * check.at(i, n)) return false;
  }
  return true;
}

}  // namespace

std::optional<CostTable> SolveByPolicyEnumeration(const GameGraph& g,
                                                  std::size_t limit,
                                                  Policy* policy_out) {
  RequireValid(g);
  const std::vector<VertexIndex> unknowns = g.non_terminals();
  if (unknowns.size() > limit) {
    throw LimitExceededError(unknowns.size(), limit);
  }
  const std::size_t n = unknowns.size();
  std::vector<std::ptrdiff_t> slot(g.size(), -1);
  for (std::size_t i = 0; i < n; ++i) slot[unknowns[i]] = static_cast<std::ptrdiff_t>(i);

  // The equation for v only depends on the unordered pair {lo(v), hi(v)}.
  std::vector<std::vector<std::pair<VertexIndex, VertexIndex>>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& succ = g.successors(unknowns[i]);
    for (std::size_t x = 0; x < succ.size(); ++x) {
      for (std::size_t y = x; y < succ.size(); ++y) {
        choices[i].emplace_back(succ[x], succ[y]);
      }
    }
  }

  std::vector<std::size_t> odometer(n, 0);
  std::vector<Wide> num(g.size(), 0);
  std::vector<Wide> x;
  while (true) {
    LinearSystem sys;
    sys.n = n;
    sys.a.assign(n * (n + 1), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sys.at(i, i) += 2;
      const auto& [p, q] = choices[i][odometer[i]];
      for (VertexIndex u : {p, q}) {
        if (u == g.red()) {
          sys.at(i, n) += 1;
        } else if (u != g.blue()) {
          sys.at(i, static_cast<std::size_t>(slot[u])) -= 1;
        }
      }
    }

    Wide det = 0;
    if (n == 0 || SolveFractionFree(sys, det, x)) {
      if (n == 0) det = 1;
      num[g.blue()] = 0;
      num[g.red()] = det;
      for (std::size_t i = 0; i < n; ++i) num[unknowns[i]] = x[i];

      bool valid = std::all_of(num.begin(), num.end(), [&](Wide value) {
        return value >= 0 && value <= det;
      });
      // All values share the denominator det, so numerators compare directly.
      for (std::size_t i = 0; valid && i < n; ++i) {
        const auto& [p, q] = choices[i][odometer[i]];
        const Wide lo = std::min(num[p], num[q]);
        const Wide hi = std::max(num[p], num[q]);
        for (VertexIndex u : g.successors(unknowns[i])) {
          if (num[u] < lo || num[u] > hi) {
            valid = false;
            break;
          }
        }
      }
      if (valid) {
        CostTable table;
        table.kind = CostKind::kExact;
        table.values.reserve(g.size());
        const mpz_class den(static_cast<long>(det));
        for (VertexIndex v = 0; v < g.size(); ++v) {
          Rat value(mpz_class(static_cast<long>(num[v])), den);
          value.canonicalize();
          table.values.push_back(value);
        }
        if (policy_out) {
          policy_out->lo.assign(g.size(), 0);
          policy_out->hi.assign(g.size(), 0);
          for (std::size_t i = 0; i < n; ++i) {
            auto [p, q] = choices[i][odometer[i]];
            if (num[p] > num[q]) std::swap(p, q);
            policy_out->lo[unknowns[i]] = p;
            policy_out->hi[unknowns[i]] = q;
          }
        }
        return table;
      }
    }

    std::size_t i = 0;
    while (i < n && ++odometer[i] == choices[i].size()) {
      odometer[i] = 0;
      ++i;
    }
    if (i == n) return std::nullopt;
  }
}

}  // namespace richman
