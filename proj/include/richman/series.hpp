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

#ifndef RICHMAN_SERIES_HPP_
#define RICHMAN_SERIES_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "richman/graph.hpp"
#include "richman/rational.hpp"

namespace richman {

// (blue team wins so far, red team wins so far)
using SeriesState = std::pair<unsigned, unsigned>;

// Interior state (i, j) is named "i-j". Every state with i = k collapses
// into the blue terminal "b", every state with j = k into the red terminal
// "r".
std::string SeriesVertexId(unsigned k, SeriesState state);

// First-to-k series. Throws std::invalid_argument for k = 0.
GameGraph BuildSeriesGraph(unsigned k);

struct SeriesSpec {
  unsigned wins_needed = 4;
  Money bankroll{1, 2};
  Money target_low = 0;   // what you hold if the blue team takes the series
  Money target_high = 1;  // ... and if the red team does
};

struct BetPlan {
  unsigned wins_needed = 0;
  std::map<SeriesState, Money> holding;  // interior states only
  std::map<SeriesState, Money> stake;
  Money initial_holding;
};

class BankrollMismatchError : public std::invalid_argument {
 public:
  BankrollMismatchError(const Money& given, const Money& required);
  const Money& required() const { return required_; }

 private:
  Money required_;
};

// holding(s) = low + R(s) * (high - low); stake(s) = holding(red wins next)
// - holding(s). Throws BankrollMismatchError unless spec.bankroll equals the
// ladder's initial holding, std::invalid_argument if low > high.
BetPlan ComputeBetPlan(const SeriesSpec& spec);

}  // namespace richman

#endif  // RICHMAN_SERIES_HPP_
