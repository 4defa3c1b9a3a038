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

#include "richman/rational.hpp"

#include <cmath>

namespace richman {

namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!IsDigits(digits)) {
    throw RationalParseError("invalid rational literal '" + std::string(whole) +
                             "' (expected p/q or an integer)");
  }
  mpz_class out(std::string(digits), 10);
  return negative ? mpz_class(-out) : out;
}

}  // namespace

Rat ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rat(ParseInteger(text, text));
  }
  mpz_class num = ParseInteger(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!IsDigits(den_text)) {
    throw RationalParseError("invalid rational literal '" + std::string(text) +
                             "' (denominator must be a positive integer)");
  }
  mpz_class den(std::string(den_text), 10);
  if (den == 0) {
    throw RationalParseError("invalid rational literal '" + std::string(text) +
                             "' (zero denominator)");
  }
  Rat out(num, den);
  out.canonicalize();
  return out;
}

std::string ToString(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double ToDouble(const Rat& value) { return value.get_d(); }

Rat FromDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot convert a non-finite double to Rat");
  }
  return Rat(value);
}

Rat RoundUpToGrid(const Rat& value, unsigned bits) {
  mpz_class scale = 1;
  scale <<= bits;
  if (scale % value.get_den() == 0) return value;
  mpz_class scaled = value.get_num() * scale;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  Rat out(q, scale);
  out.canonicalize();
  return out;
}

Rat RoundDownToGrid(const Rat& value, unsigned bits) {
  mpz_class scale = 1;
  scale <<= bits;
  if (scale % value.get_den() == 0) return value;
  mpz_class scaled = value.get_num() * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  Rat out(q, scale);
  out.canonicalize();
  return out;
}

}  // namespace richman
