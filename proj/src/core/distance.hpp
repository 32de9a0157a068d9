#pragma once

#include <limits>
#include <vector>

#include "assignment.hpp"
#include "escorts.hpp"
#include "grid.hpp"

namespace pbss {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Estimated escort travel cost to an escort target position.
struct DistanceEstimate {
  int base = 0;  // Manhattan distance
  int t = 0;     // 2 when every monotone path is blocked by a target item
  int r = 0;     // extra moves to bring escorts onto the onward route

  int c() const { return base + t + r; }
};

struct QVector {
  std::vector<Position> targets;
  std::vector<int> q;        // per target, minimum estimate over all escorts
  int min_d = kUnreachable;  // min over q; kUnreachable with no targets
};

// 0 if some staircase path from e to tpos avoids every target item (e itself
// is never checked), else 2.
int correction_t(const GridState& state, Position e, Position tpos);

// Escorts still missing to carry an item from tpos to io: distance minus the
// escorts inside the tpos-io rectangle, plus one. Negative means surplus.
int reuse_shortfall(const GridState& state, Position tpos, Position io);

// Reuse correction for escort e serving tpos. For each target item that tpos
// carries toward one of its target IOs, the cheapest staircase route from tpos
// to such an IO is priced: route cells already holding an escort other than e
// are free, every other cell costs 2 if the item turns into it and 4 if it
// keeps heading straight (the escort left behind must walk round the item).
// The worst item counts. Every other target item whose route loses e adds the
// price increase of its own best route. Always even and nonnegative.
int correction_r(const GridState& state, Position e, Position tpos,
                 const AssignmentPlanSet& plans);

// Full c = base + t + r for one escort/target pair. An escort already standing
// on tpos still pays r.
DistanceEstimate estimate_distance(const GridState& state, Position e, Position tpos,
                                   const AssignmentPlanSet& plans);

QVector q_vector(const GridState& state, const std::vector<Position>& targets,
                 const AssignmentPlanSet& plans);

// Shared precomputation for one status; the free functions above are thin
// wrappers that build one of these per call.
class DistanceEstimator {
 public:
  DistanceEstimator(const GridState& state, const AssignmentPlanSet& plans);

  int correction_t(Position e, Position tpos) const;
  int correction_r(Position e, Position tpos) const;
  DistanceEstimate estimate(Position e, Position tpos) const;
  QVector q_vector(const std::vector<Position>& targets) const;

 private:
  // Route price for `item` once it has stepped onto tpos, heading for IO
  // io_index, with escort e spent. Cached when e cannot lie on the route.
  int onward_cost(std::size_t item, Position tpos, int io_index, Position e) const;

  const GridState& state_;
  std::vector<Position> items_;
  std::vector<Position> escorts_;
  std::vector<std::vector<int>> item_ios_;
  CellCounter target_counter_;
  std::vector<int> item_cost_;  // best route price from each item's own cell
  mutable std::vector<int> onward_cache_;
};

}  // namespace pbss
