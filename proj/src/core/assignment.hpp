#pragma once

#include <span>
#include <vector>

#include "grid.hpp"

namespace pbss {

// Injective map from target items (row-major order of the state's target
// cells) to IO indexes (order of GridState::io_positions()).
struct AssignmentPlan {
  std::vector<int> io_of_item;

  friend auto operator<=>(const AssignmentPlan&, const AssignmentPlan&) = default;
};

// Every assignment reaching the minimal total item-IO distance, sorted
// lexicographically by mapping.
struct AssignmentPlanSet {
  int d_min = 0;
  std::vector<AssignmentPlan> plans;

  std::size_t h() const { return plans.size(); }
};

// Throws Error(kOutOfRange) if the plan names a missing item or IO.
int plan_distance(const GridState& state, const AssignmentPlan& plan);
int plan_distance(std::span<const Position> items, std::span<const Position> ios,
                  const AssignmentPlan& plan);

// Throws Error(kInfeasible) when items outnumber IOs. With no items the set
// holds a single empty plan and d_min == 0.
AssignmentPlanSet optimal_assignments(const GridState& state);
AssignmentPlanSet optimal_assignments(std::span<const Position> items,
                                      std::span<const Position> ios);

}  // namespace pbss
