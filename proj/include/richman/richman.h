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

/*
 * C interface to the Richman game solver and simulator.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns an rm_status; on failure rm_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * rm_string_free().
 */
#ifndef RICHMAN_RICHMAN_H_
#define RICHMAN_RICHMAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RM_API __declspec(dllexport)
#else
#define RM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum rm_status {
  RM_OK = 0,
  RM_ERR_PARSE = 2,
  RM_ERR_VALIDATION = 3,
  RM_ERR_NOT_CONVERGED = 4,
  RM_ERR_LIMIT_EXCEEDED = 5,
  RM_ERR_USAGE = 6,
  RM_ERR_PROTOCOL = 7,
  RM_ERR_INTERNAL = 8
} rm_status;

typedef enum rm_format { RM_FORMAT_JSON = 0, RM_FORMAT_TABLE = 1 } rm_format;

typedef struct rm_graph rm_graph;
typedef struct rm_costs rm_costs;

RM_API const char* rm_last_error(void);
RM_API void rm_string_free(char* s);

/* Graphs. */
RM_API rm_status rm_graph_parse(const char* text, rm_graph** out);
RM_API rm_status rm_graph_load(const char* path, rm_graph** out);
/* First-to-k series ladder. */
RM_API rm_status rm_graph_series(unsigned k, rm_graph** out);
RM_API void rm_graph_free(rm_graph* g);
RM_API size_t rm_graph_vertex_count(const rm_graph* g);
RM_API rm_status rm_graph_serialize(const rm_graph* g, char** out);
/* Always fills *report; returns RM_ERR_VALIDATION when violations exist. */
RM_API rm_status rm_graph_validate(const rm_graph* g, rm_format fmt,
                                   char** report);

/* Solving. */
RM_API rm_status rm_solve_exact(const rm_graph* g, rm_costs** out);
/* Fills *out with the bracket even when returning RM_ERR_NOT_CONVERGED. */
RM_API rm_status rm_solve_iterative(const rm_graph* g, double tol,
                                    uint64_t max_iters, rm_format fmt,
                                    char** out);
RM_API rm_status rm_costs_render(const rm_costs* c, rm_format fmt, char** out);
/* Exact cost of one vertex as "p/q" (or "p"). */
RM_API rm_status rm_costs_get(const rm_costs* c, const char* vertex,
                              char** out);
RM_API void rm_costs_free(rm_costs* c);

/* Richman simulation. Money literals are exact ("3/5", "1"). */
typedef struct rm_simulate_params {
  const char* start;
  const char* blue_money;
  const char* red_money;
  const char* blue_agent; /* "optimal", "safety", "uniform-random-bid" */
  const char* red_agent;
  const char* tiebreak; /* "fair", "always-blue", "always-red" */
  uint64_t runs;
  uint64_t seed;
  uint64_t max_moves; /* 0 selects the default cap */
  int trace;          /* nonzero: prepend every game's trace */
  unsigned threads;   /* 0 or 1: sequential */
} rm_simulate_params;

typedef struct rm_batch_stats {
  uint64_t runs;
  uint64_t blue_wins;
  uint64_t red_wins;
  uint64_t unresolved;
} rm_batch_stats;

RM_API rm_status rm_simulate(const rm_costs* c, const rm_simulate_params* p,
                             rm_format fmt, rm_batch_stats* stats,
                             char** out);

/* Random-turn estimation of R(start). */
typedef struct rm_random_turn_result {
  double frequency;
  double std_error;
  double exact;
  uint64_t red_wins;
  uint64_t unresolved;
} rm_random_turn_result;

RM_API rm_status rm_random_turn(const rm_costs* c, const char* start,
                                uint64_t runs, uint64_t seed,
                                uint64_t max_moves, rm_format fmt,
                                rm_random_turn_result* result, char** out);

/* Betting ladder for a first-to-k series; low/high may be NULL (0 and 1). */
RM_API rm_status rm_series(unsigned k, const char* bankroll, const char* low,
                           const char* high, rm_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RICHMAN_RICHMAN_H_ */
