#include "solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "assignment.hpp"
#include "error.hpp"
#include "escorts.hpp"

namespace pbss {

namespace {

int compare(int before, int after) { return (after > before) - (after < before); }

// Last-N visited states, as canonical keys.
class CycleMemory {
 public:
  explicit CycleMemory(int capacity) : capacity_(static_cast<std::size_t>(std::max(capacity, 1))) {}

  void remember(const GridState& state) {
    std::string key = state.canonical_key();
    ++counts_[key];
    order_.push_back(std::move(key));
    if (order_.size() > capacity_) {
      auto it = counts_.find(order_.front());
      if (--it->second == 0) counts_.erase(it);
      order_.pop_front();
    }
  }

  bool contains(const GridState& state) const { return counts_.count(state.canonical_key()) > 0; }

 private:
  std::size_t capacity_;
  std::deque<std::string> order_;
  std::unordered_map<std::string, int> counts_;
};

}  // namespace

std::string_view reason_name(Reason reason) {
  switch (reason) {
    case Reason::kTotalDistance:
      return "total_distance";
    case Reason::kRequiredEscorts:
      return "required_escorts";
    case Reason::kMinDistanceMatrix:
      return "min_distance_matrix";
    case Reason::kNeutral:
      return "neutral";
  }
  return "neutral";
}

std::optional<Reason> parse_reason(std::string_view name) {
  for (Reason r : {Reason::kTotalDistance, Reason::kRequiredEscorts, Reason::kMinDistanceMatrix,
                   Reason::kNeutral})
    if (reason_name(r) == name) return r;
  return std::nullopt;
}

int default_max_steps(const GridState& state) { return 20 * state.width() * state.height(); }

StatusIndexes evaluate(const GridState& state) {
  auto items = state.targets();
  AssignmentPlanSet plans = optimal_assignments(items, state.io_positions());
  StatusIndexes out;
  out.d_min = plans.d_min;
  if (items.empty()) return out;
  auto targets = escort_target_positions(state, plans);
  out.et_min = min_required_escorts(state, plans);
  out.min_d = DistanceEstimator(state, plans).q_vector(targets).min_d;
  return out;
}

Reason classify(const StatusIndexes& before, const StatusIndexes& after) {
  if (before.d_min != after.d_min) return Reason::kTotalDistance;
  if (before.et_min != after.et_min) return Reason::kRequiredEscorts;
  if (before.min_d != after.min_d) return Reason::kMinDistanceMatrix;
  return Reason::kNeutral;
}

int reward(const StatusIndexes& before, const StatusIndexes& after) {
  switch (classify(before, after)) {
    case Reason::kTotalDistance:
      return compare(before.d_min, after.d_min) < 0 ? 100 : -1;
    case Reason::kRequiredEscorts:
      return compare(before.et_min, after.et_min) < 0 ? 50 : -1;
    case Reason::kMinDistanceMatrix:
      return compare(before.min_d, after.min_d) < 0 ? 10 : -1;
    case Reason::kNeutral:
      return 0;
  }
  return 0;
}

DecisionRecord make_record(int step, const MoveAction& move, const StatusIndexes& before,
                           const StatusIndexes& after) {
  DecisionRecord record;
  record.step = step;
  record.move = move;
  record.reason = classify(before, after);
  record.reward = reward(before, after);
  switch (record.reason) {
    case Reason::kTotalDistance:
      record.value_before = before.d_min;
      record.value_after = after.d_min;
      break;
    case Reason::kRequiredEscorts:
      record.value_before = before.et_min;
      record.value_after = after.et_min;
      break;
    case Reason::kMinDistanceMatrix:
    case Reason::kNeutral:
      record.value_before = before.min_d;
      record.value_after = after.min_d;
      break;
  }
  return record;
}

Decision decide(const GridState& state, const StatusIndexes& indexes, std::mt19937_64& rng,
                const std::function<bool(const GridState&)>& excluded) {
  auto actions = legal_actions(state);
  if (actions.empty()) throw Error(ErrorCode::kNoLegalAction, "no escort can move");

  struct Candidate {
    std::size_t action;
    GridState next;
    StatusIndexes indexes;
    int reward;
    bool excluded;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    GridState next = apply_action(state, actions[i]);
    StatusIndexes next_indexes = evaluate(next);
    int r = reward(indexes, next_indexes);
    bool drop = r <= 0 && excluded && excluded(next);
    candidates.push_back({i, std::move(next), next_indexes, r, drop});
  }

  bool any_allowed = false;
  for (const auto& c : candidates) any_allowed = any_allowed || !c.excluded;

  int best = std::numeric_limits<int>::min();
  std::vector<std::size_t> best_set;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (any_allowed && candidates[i].excluded) continue;
    if (candidates[i].reward > best) {
      best = candidates[i].reward;
      best_set.clear();
    }
    if (candidates[i].reward == best) best_set.push_back(i);
  }

  auto key = [&](std::size_t i) {
    const StatusIndexes& x = candidates[i].indexes;
    return std::tuple(x.min_d, x.d_min, x.et_min);
  };
  auto lowest = key(best_set.front());
  for (std::size_t i : best_set) lowest = std::min(lowest, key(i));
  std::erase_if(best_set, [&](std::size_t i) { return key(i) != lowest; });

  std::size_t pick = best_set.front();
  if (best_set.size() > 1) {
    std::uniform_int_distribution<std::size_t> dist(0, best_set.size() - 1);
    pick = best_set[dist(rng)];
  }
  Candidate& chosen = candidates[pick];
  const MoveAction& action = actions[chosen.action];
  return {action, make_record(0, action, indexes, chosen.indexes), std::move(chosen.next),
          chosen.indexes};
}

SolveTrace solve(const GridState& initial, const SolverConfig& config) {
  GridState state = sweep_retrievals(initial);
  SolveTrace trace{state, {}, false};
  const int max_steps = config.max_steps > 0 ? config.max_steps : default_max_steps(state);

  std::mt19937_64 rng(config.rng_seed);
  CycleMemory memory(config.cycle_memory);
  memory.remember(state);
  StatusIndexes indexes = evaluate(state);

  while (state.count(CellKind::kTargetItem) > 0) {
    if (trace.total_steps() >= max_steps) return trace;
    Decision decision = decide(state, indexes, rng,
                               [&](const GridState& next) { return memory.contains(next); });
    decision.record.step = trace.total_steps() + 1;
    trace.records.push_back(decision.record);
    state = std::move(decision.next);
    indexes = decision.next_indexes;
    memory.remember(state);
  }
  trace.solved = true;
  return trace;
}

GridState replay(const SolveTrace& trace) {
  GridState state = trace.initial;
  for (const auto& record : trace.records) {
    if (!is_legal(state, record.move))
      throw Error(ErrorCode::kReplayMismatch,
                  "step " + std::to_string(record.step) + ": move " +
                      to_string(record.move.escort_from) + " -> " +
                      to_string(record.move.escort_to) + " does not apply");
    state = apply_action(state, record.move);
  }
  return state;
}

}  // namespace pbss
