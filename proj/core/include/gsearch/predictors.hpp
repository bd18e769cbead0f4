#pragma once

// Closed-form iteration and query predictors. All pure functions.

#include <cstdint>
#include <vector>

#include "gsearch/bits.hpp"
#include "gsearch/grover_ops.hpp"

namespace gsearch {

/// pi/4 * sqrt(N) * sqrt((b-1)/b): queries for partial (block) search.
double grk_query_count(BasisIndex n, int b);

/// Per-pass iteration count at level `level` of the bi-directional tree,
/// each pass searching N/2 states:
///   pi/4 * (sqrt((N/2)/b^level) - sqrt((N/2)/b^(level+1))).
/// Requires b^(level+1) <= N/2.
double bdgs_level_iterations(BasisIndex n, int b, int level);

/// Number of whole levels a pass runs: floor(r / 2k).
int bdgs_level_count(int r, int k);

/// Residual term left after the whole levels when r/2k is fractional:
///   pi/4 * (sqrt((N/2)/b^L) - sqrt((N/2)/b^(r/2k))),  L = floor(r/2k).
/// Zero whenever 2k divides r.
double bdgs_terminal_iterations(BasisIndex n, int b, int r, int k);

/// pi/(4 sqrt 2) * sqrt(N) * (1 - sqrt(1 / b^(r/2k))).
double bdgs_total_queries(BasisIndex n, int b, int r, int k);

/// Wall-clock layer count. GS: optimal_iterations(2^r). DFGS: ceil(r/k).
/// BDGS: the longer of the forward and backward passes, ceil(r/2k).
/// GRK: global + local + cleanup iterations of the planned schedule.
int predicted_layers(Algorithm algorithm, int r, int k);

/// Segments a depth-first pass resolves: [0,k-1], [k,2k-1], ... up to r-1.
std::vector<BitRange> depth_first_segments(int r, int k);

/// Forward segments of a bi-directional search, positions 0..floor(r/2)-1.
std::vector<BitRange> forward_segments(int r, int k);

/// Backward segments, from position r-1 down to floor(r/2).
std::vector<BitRange> backward_segments(int r, int k);

/// GRK schedule: `global` iterations, `local` block iterations and one global
/// cleanup iteration.
struct GrkSchedule {
  int global = 0;
  int local = 0;
  double block_probability = 0.0;

  int oracle_calls() const { return global + local + 1; }
};

/// Fewest total iterations (global + local <= ceil(grk_query_count)) whose
/// target-block probability after the cleanup reaches the full-search
/// success probability; falls back to the most probable schedule within the
/// budget. Evaluated on the exact three-amplitude reduction of the state.
GrkSchedule plan_grk_schedule(int r, int b);

/// Target-block probability of a given schedule, from the same reduction.
double grk_block_probability(int r, int b, int global, int local);

struct PredictedCost {
  Algorithm algorithm = Algorithm::GS;
  int r = 0;
  int b = 0;
  int k = 0;
  double iterations = 0.0;   // pre-rounding
  double oracle_calls = 0.0; // closed-form bound
  int layers = 0;
};

PredictedCost predict_cost(Algorithm algorithm, int r, int b);

}  // namespace gsearch
