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

#include "richman/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace richman {

GraphParseError::GraphParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " +
                                         message),
      line_(line) {}

UnknownVertexError::UnknownVertexError(std::string_view id)
    : std::out_of_range("unknown vertex '" + std::string(id) + "'") {}

GameGraph::GameGraph(VertexId blue, VertexId red,
                     std::vector<std::pair<VertexId, VertexId>> edges,
                     std::vector<VertexId> extra_vertices) {
  ids_ = std::move(extra_vertices);
  ids_.push_back(blue);
  ids_.push_back(red);
  for (const auto& [from, to] : edges) {
    ids_.push_back(from);
    ids_.push_back(to);
  }
  for (const auto& id : ids_) {
    if (id.empty()) throw std::invalid_argument("empty vertex id");
  }
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());

  blue_ = index(blue);
  red_ = index(red);
  edges_.reserve(edges.size());
  for (const auto& [from, to] : edges) {
    edges_.emplace_back(index(from), index(to));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  succ_.assign(ids_.size(), {});
  for (const auto& [from, to] : edges_) {
    if (!is_terminal(from)) succ_[from].push_back(to);
  }
}

std::optional<VertexIndex> GameGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - ids_.begin());
}

VertexIndex GameGraph::index(std::string_view id) const {
  if (auto found = find(id)) return *found;
  throw UnknownVertexError(id);
}

std::vector<VertexIndex> GameGraph::non_terminals() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < size(); ++v) {
    if (!is_terminal(v)) out.push_back(v);
  }
  return out;
}

GameGraph ParseGameGraph(std::string_view text) {
  std::optional<VertexId> blue;
  std::optional<VertexId> red;
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    const std::string& keyword = tokens.front();
    auto check_id = [&](const std::string& id) {
      if (id == "#") throw GraphParseError(line_no, "'#' is not a vertex id");
    };
    if (keyword == "blue" || keyword == "red") {
      if (tokens.size() != 2) {
        throw GraphParseError(line_no, "expected '" + keyword + " <id>'");
      }
      check_id(tokens[1]);
      auto& slot = keyword == "blue" ? blue : red;
      if (slot) {
        throw GraphParseError(line_no, "duplicate '" + keyword + "' declaration");
      }
      slot = tokens[1];
    } else if (keyword == "edge") {
      if (tokens.size() != 3) {
        throw GraphParseError(line_no, "expected 'edge <from> <to>'");
      }
      check_id(tokens[1]);
      check_id(tokens[2]);
      edges.emplace_back(tokens[1], tokens[2]);
    } else {
      throw GraphParseError(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!blue || !red) {
    throw GraphParseError(0, "missing distinguished vertices (need one 'blue' "
                             "and one 'red' line)");
  }
  if (*blue == *red) {
    throw GraphParseError(0, "blue and red must be distinct vertices");
  }
  return GameGraph(*blue, *red, std::move(edges));
}

std::string SerializeGameGraph(const GameGraph& g) {
  std::string out;
  out += "blue " + g.id(g.blue()) + "\n";
  out += "red " + g.id(g.red()) + "\n";
  for (const auto& [from, to] : g.edges()) {
    out += "edge " + g.id(from) + " " + g.id(to) + "\n";
  }
  return out;
}

std::vector<VertexId> Successors(const GameGraph& g, std::string_view v) {
  std::vector<VertexId> out;
  for (VertexIndex u : g.successors(g.index(v))) out.push_back(g.id(u));
  return out;
}

std::string_view ToString(ViolationCode code) {
  switch (code) {
    case ViolationCode::kBlueEqualsRed:
      return "BLUE_EQUALS_RED";
    case ViolationCode::kTerminalSelfLoop:
      return "TERMINAL_SELF_LOOP";
    case ViolationCode::kDeadEnd:
      return "DEAD_END";
    case ViolationCode::kUnreachableTerminals:
      return "UNREACHABLE_TERMINALS";
  }
  return "UNKNOWN";
}

bool ValidationReport::has(ViolationCode code, std::string_view where) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) {
                       return v.code == code && v.where == where;
                     });
}

ValidationReport Validate(const GameGraph& g) {
  ValidationReport report;
  if (g.blue() == g.red()) {
    report.violations.push_back({ViolationCode::kBlueEqualsRed, g.id(g.blue()),
                                 "blue and red are the same vertex"});
  }
  for (const auto& [from, to] : g.edges()) {
    if (from == to && g.is_terminal(from)) {
      report.violations.push_back(
          {ViolationCode::kTerminalSelfLoop, g.id(from) + "->" + g.id(to),
           "self-loop on terminal vertex " + g.id(from)});
    }
  }

  // Reverse search from {b, r} over successor edges.
  std::vector<std::vector<VertexIndex>> pred(g.size());
  for (VertexIndex v = 0; v < g.size(); ++v) {
    for (VertexIndex u : g.successors(v)) pred[u].push_back(v);
  }
  std::vector<bool> reached(g.size(), false);
  std::deque<VertexIndex> queue{g.blue(), g.red()};
  reached[g.blue()] = reached[g.red()] = true;
  while (!queue.empty()) {
    VertexIndex u = queue.front();
    queue.pop_front();
    for (VertexIndex v : pred[u]) {
      if (!reached[v]) {
        reached[v] = true;
        queue.push_back(v);
      }
    }
  }

  for (VertexIndex v = 0; v < g.size(); ++v) {
    if (g.is_terminal(v)) continue;
    if (g.successors(v).empty()) {
      report.violations.push_back({ViolationCode::kDeadEnd, g.id(v),
                                   "vertex " + g.id(v) +
                                       " has no outgoing edge"});
    } else if (!reached[v]) {
      report.violations.push_back(
          {ViolationCode::kUnreachableTerminals, g.id(v),
           "no path from " + g.id(v) + " to either terminal"});
    }
  }
  return report;
}

namespace {

std::string Describe(const ValidationReport& report) {
  std::string out = "invalid game graph:";
  for (const auto& v : report.violations) {
    out += " ";
    out += ToString(v.code);
    out += "(" + v.where + ")";
  }
  return out;
}

}  // namespace

InvalidGraphError::InvalidGraphError(ValidationReport report)
    : std::runtime_error(Describe(report)), report_(std::move(report)) {}

void RequireValid(const GameGraph& g) {
  ValidationReport report = Validate(g);
  if (!report.ok()) throw InvalidGraphError(std::move(report));
}

}  // namespace richman
