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

#ifndef RICHMAN_RATIONAL_HPP_
#define RICHMAN_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace richman {

// Exact rational in lowest terms. All costs, bids and bankrolls use it.
using Rat = mpq_class;

// Dollars. Nonnegativity is checked where money enters the system.
using Money = Rat;

class RationalParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "p/q" or an integer literal. Decimal notation is rejected so that
// inputs stay exact.
Rat ParseRational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string ToString(const Rat& value);

double ToDouble(const Rat& value);

// Exact value of a finite double.
Rat FromDouble(double value);

// Rounds a dyadic-or-not rational onto the grid 2^-bits, upward or downward.
// Values whose denominator already divides 2^bits are returned unchanged.
Rat RoundUpToGrid(const Rat& value, unsigned bits);
Rat RoundDownToGrid(const Rat& value, unsigned bits);

}  // namespace richman

#endif  // RICHMAN_RATIONAL_HPP_
