#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "grid.hpp"

namespace pbss {

struct OracleLimits {
  std::uint64_t max_expanded_states = 20'000'000;
  int max_depth = 1000;
};

struct OracleResult {
  std::optional<int> steps;    // nullopt: unsolvable or limits hit
  std::uint64_t expanded = 0;
  bool limit_reached = false;  // search stopped early by a limit
};

// Admissible lower bound on the moves still needed: the larger of
//  - the sum of nearest-IO distances, plus one when no escort can shorten any
//    of them with the next move, and
//  - for each single target item, its distance plus the escort travel needed
//    before it can first move, or its cheapest route where each cell entered
//    that holds no escort yet costs one extra move.
int remaining_moves_lower_bound(const GridState& state);

// Exact minimum number of moves that retrieves every target item, by A* over
// packed board encodings with duplicate detection. Grids are limited to 128
// cells. Throws Error(kInfeasible) when items outnumber IOs and
// Error(kInvalidArgument) for oversized grids.
OracleResult solve_optimal(const GridState& initial, const OracleLimits& limits = {});
std::optional<int> optimal_steps(const GridState& initial, const OracleLimits& limits = {});

// Plain breadth-first search over GridState values keyed by canonical_key().
// Slow; the reference for solve_optimal on small grids.
OracleResult bfs_optimal(const GridState& initial, const OracleLimits& limits = {});

struct StepPair {
  double heuristic = 0;
  int optimal = 0;
};

// Mean relative excess in percent: 100/n * sum (heuristic - optimal) / optimal.
// Throws Error(kInvalidArgument) if an optimum is not positive. Empty input
// yields 0.
double gap_percent(std::span<const StepPair> pairs);

}  // namespace pbss
