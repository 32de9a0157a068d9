#include "assignment.hpp"

#include <algorithm>
#include <limits>

#include "error.hpp"

namespace pbss {

namespace {

// Depth-first enumeration in lexicographic order with a bound that never cuts
// a tie, so every minimiser is collected exactly once and already sorted.
class AssignmentSearch {
 public:
  AssignmentSearch(std::span<const Position> items, std::span<const Position> ios)
      : items_(items), ios_(ios), used_(ios.size(), false), current_(items.size(), -1) {
    // suffix_floor_[j]: sum over items j.. of their nearest-IO distance.
    suffix_floor_.assign(items.size() + 1, 0);
    for (std::size_t j = items.size(); j-- > 0;) {
      int nearest = std::numeric_limits<int>::max();
      for (Position io : ios) nearest = std::min(nearest, manhattan(items[j], io));
      suffix_floor_[j] = suffix_floor_[j + 1] + nearest;
    }
  }

  AssignmentPlanSet run() {
    visit(0, 0);
    AssignmentPlanSet result;
    result.d_min = best_;
    result.plans = std::move(plans_);
    return result;
  }

 private:
  void visit(std::size_t item, int partial) {
    if (partial + suffix_floor_[item] > best_) return;
    if (item == items_.size()) {
      if (partial < best_) {
        best_ = partial;
        plans_.clear();
      }
      plans_.push_back({current_});
      return;
    }
    for (std::size_t io = 0; io < ios_.size(); ++io) {
      if (used_[io]) continue;
      used_[io] = true;
      current_[item] = static_cast<int>(io);
      visit(item + 1, partial + manhattan(items_[item], ios_[io]));
      used_[io] = false;
    }
    current_[item] = -1;
  }

  std::span<const Position> items_;
  std::span<const Position> ios_;
  std::vector<bool> used_;
  std::vector<int> current_;
  std::vector<int> suffix_floor_;
  int best_ = std::numeric_limits<int>::max();
  std::vector<AssignmentPlan> plans_;
};

}  // namespace

int plan_distance(std::span<const Position> items, std::span<const Position> ios,
                  const AssignmentPlan& plan) {
  if (plan.io_of_item.size() != items.size())
    throw Error(ErrorCode::kOutOfRange, "plan size does not match the number of target items");
  int total = 0;
  for (std::size_t j = 0; j < items.size(); ++j) {
    int io = plan.io_of_item[j];
    if (io < 0 || static_cast<std::size_t>(io) >= ios.size())
      throw Error(ErrorCode::kOutOfRange, "plan references IO index " + std::to_string(io));
    total += manhattan(items[j], ios[static_cast<std::size_t>(io)]);
  }
  return total;
}

int plan_distance(const GridState& state, const AssignmentPlan& plan) {
  auto items = state.targets();
  return plan_distance(items, state.io_positions(), plan);
}

AssignmentPlanSet optimal_assignments(std::span<const Position> items,
                                      std::span<const Position> ios) {
  if (items.size() > ios.size())
    throw Error(ErrorCode::kInfeasible, std::to_string(items.size()) + " target items but only " +
                                            std::to_string(ios.size()) + " IOs");
  if (items.empty()) return {0, {AssignmentPlan{}}};
  return AssignmentSearch(items, ios).run();
}

AssignmentPlanSet optimal_assignments(const GridState& state) {
  auto items = state.targets();
  return optimal_assignments(items, state.io_positions());
}

}  // namespace pbss
