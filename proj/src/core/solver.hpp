#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "distance.hpp"
#include "grid.hpp"

namespace pbss {

// The three status evaluation indexes, compared lexicographically by reward().
struct StatusIndexes {
  int d_min = 0;              // minimal total item-IO distance
  int et_min = 0;             // minimal total required escorts over optimal plans
  int min_d = kUnreachable;   // smallest escort-to-target estimate

  friend bool operator==(const StatusIndexes&, const StatusIndexes&) = default;
};

enum class Reason { kTotalDistance, kRequiredEscorts, kMinDistanceMatrix, kNeutral };

std::string_view reason_name(Reason reason);
std::optional<Reason> parse_reason(std::string_view name);

struct DecisionRecord {
  int step = 0;  // 1-based
  MoveAction move;
  Reason reason = Reason::kNeutral;
  int value_before = 0;
  int value_after = 0;
  int reward = 0;

  friend bool operator==(const DecisionRecord&, const DecisionRecord&) = default;
};

struct SolveTrace {
  GridState initial;
  std::vector<DecisionRecord> records;
  bool solved = false;

  int total_steps() const { return static_cast<int>(records.size()); }
};

struct SolverConfig {
  std::uint64_t rng_seed = 0;
  int max_steps = 0;  // 0 selects default_max_steps()
  int cycle_memory = 64;
};

// 20 * width * height.
int default_max_steps(const GridState& state);

// Throws Error(kInfeasible) when target items outnumber IOs.
StatusIndexes evaluate(const GridState& state);

// Reward table: 100 / -1 on a total-distance change, else 50 / -1 on a
// required-escort change, else 10 / -1 on a distance-matrix change, else 0.
int reward(const StatusIndexes& before, const StatusIndexes& after);

// Highest-priority index that differs, kNeutral when none does.
Reason classify(const StatusIndexes& before, const StatusIndexes& after);

DecisionRecord make_record(int step, const MoveAction& move, const StatusIndexes& before,
                           const StatusIndexes& after);

struct Decision {
  MoveAction action;
  DecisionRecord record;
  GridState next;
  StatusIndexes next_indexes;
};

// Scores every adjacent status and returns a maximal-reward move, ties broken
// uniformly with `rng`. Candidates whose successor satisfies `excluded` are
// dropped unless their reward is positive or nothing else is left. Throws
// Error(kNoLegalAction) when no escort can move.
Decision decide(const GridState& state, const StatusIndexes& indexes, std::mt19937_64& rng,
                const std::function<bool(const GridState&)>& excluded = {});

// Repeats decide/apply_action until no target item is left or max_steps moves
// were made. Target items already on an IO are swept before the first move;
// the trace's initial state is the swept one.
SolveTrace solve(const GridState& initial, const SolverConfig& config = {});

// Re-applies the trace's moves; throws Error(kReplayMismatch) if one is illegal.
GridState replay(const SolveTrace& trace);

}  // namespace pbss
