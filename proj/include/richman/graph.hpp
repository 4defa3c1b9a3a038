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

#ifndef RICHMAN_GRAPH_HPP_
#define RICHMAN_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace richman {

using VertexId = std::string;

// Dense index into GameGraph::vertices(). Vertices are sorted
// lexicographically by id, so comparing indices compares ids.
using VertexIndex = std::size_t;

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& message);
  // 0 when the error is not tied to a particular line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownVertexError : public std::out_of_range {
 public:
  explicit UnknownVertexError(std::string_view id);
};

// A finite digraph with a blue terminal b and a red terminal r. Immutable
// once built. Edges leaving b or r are kept (they are part of the input) but
// never reported as successors, since the game ends at a terminal.
class GameGraph {
 public:
  // Vertex set is blue, red, every edge endpoint and `extra_vertices`.
  // Duplicate edges collapse. Throws std::invalid_argument on an empty id.
  GameGraph(VertexId blue, VertexId red,
            std::vector<std::pair<VertexId, VertexId>> edges,
            std::vector<VertexId> extra_vertices = {});

  std::size_t size() const { return ids_.size(); }
  const std::vector<VertexId>& vertices() const { return ids_; }
  const VertexId& id(VertexIndex v) const { return ids_.at(v); }
  std::optional<VertexIndex> find(std::string_view id) const;
  // Throws UnknownVertexError.
  VertexIndex index(std::string_view id) const;

  VertexIndex blue() const { return blue_; }
  VertexIndex red() const { return red_; }
  bool is_terminal(VertexIndex v) const { return v == blue_ || v == red_; }

  // S(v), sorted ascending; empty for terminals.
  const std::vector<VertexIndex>& successors(VertexIndex v) const {
    return succ_.at(v);
  }
  // Every edge as given, including those leaving terminals; sorted.
  const std::vector<std::pair<VertexIndex, VertexIndex>>& edges() const {
    return edges_;
  }

  std::vector<VertexIndex> non_terminals() const;

 private:
  std::vector<VertexId> ids_;
  VertexIndex blue_ = 0;
  VertexIndex red_ = 0;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
  std::vector<std::vector<VertexIndex>> succ_;
};

// Parses the line-oriented text format:
//   # comment
//   blue <id>
//   red <id>
//   edge <from> <to>
GameGraph ParseGameGraph(std::string_view text);

// Canonical form: blue line, red line, then edges sorted by (from, to).
std::string SerializeGameGraph(const GameGraph& g);

// S(v) by id. Throws UnknownVertexError.
std::vector<VertexId> Successors(const GameGraph& g, std::string_view v);

enum class ViolationCode {
  kBlueEqualsRed,
  kTerminalSelfLoop,
  kDeadEnd,
  kUnreachableTerminals,
};

std::string_view ToString(ViolationCode code);

struct Violation {
  ViolationCode code;
  // The offending vertex, or "from->to" for edge violations.
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationCode code, std::string_view where) const;
};

ValidationReport Validate(const GameGraph& g);

class InvalidGraphError : public std::runtime_error {
 public:
  explicit InvalidGraphError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Throws InvalidGraphError unless Validate(g).ok().
void RequireValid(const GameGraph& g);

}  // namespace richman

#endif  // RICHMAN_GRAPH_HPP_
