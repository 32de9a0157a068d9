#pragma once

#include <vector>

#include "assignment.hpp"
#include "grid.hpp"

namespace pbss {

// 2-D prefix sums over the cells of one kind; rectangle queries in O(1).
class CellCounter {
 public:
  CellCounter(const GridState& state, CellKind kind);

  // Cells of the counted kind inside the axis-aligned rectangle spanned by a
  // and b, both corners included.
  int count(Position a, Position b) const;

 private:
  int width_;
  std::vector<int> prefix_;  // (width+1) x (height+1)
};

int existing_escorts_in_rectangle(const GridState& state, Position a, Position b);

// max(0, manhattan(item, io) - escorts in their rectangle).
int required_escorts(const GridState& state, Position item, Position io);

struct EscortDemand {
  std::vector<int> per_item;
  int total = 0;
};

EscortDemand escort_demand(const GridState& state, const AssignmentPlan& plan);
int total_required_escorts(const GridState& state, const AssignmentPlan& plan);
// Minimum of total_required_escorts over the optimal plans.
int min_required_escorts(const GridState& state, const AssignmentPlanSet& plans);

// Does stepping the item at `item` onto the neighbour `p` bring it closer to `io`?
inline bool shortens(Position item, Position p, Position io) {
  return (io.x - item.x) * (p.x - item.x) > 0 || (io.y - item.y) * (p.y - item.y) > 0;
}

// For each target item (row-major), the IO indexes it is sent to by at least
// one optimal plan, ascending.
std::vector<std::vector<int>> target_ios(const AssignmentPlanSet& plans, std::size_t item_count);

// Cells adjacent to a target item onto which that item would move closer to
// one of its target IOs. Cells holding target items are excluded. Row-major,
// without duplicates.
std::vector<Position> escort_target_positions(const GridState& state,
                                              const AssignmentPlanSet& plans);

}  // namespace pbss
