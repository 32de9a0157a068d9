#include "distance.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace pbss {

namespace {

constexpr Position kNoCell{-1, -1};
constexpr int kInfinite = 1 << 28;

bool inside(Position p, Position a, Position b) {
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

enum Heading { kHorizontal = 0, kVertical = 1, kAny = 2 };

// Extra escort moves needed to carry an item from `from` to io along the best
// staircase route, on top of the item's own steps. A route cell that already
// holds an escort (other than `skip`) is free. Otherwise the escort left
// behind by the previous step has to come round: 2 moves if the item turns,
// 4 if it keeps its heading.
int route_cost(const GridState& state, Position from, Position io, Heading arrival,
               Position skip) {
  const int nx = std::abs(io.x - from.x), ny = std::abs(io.y - from.y);
  const int sx = io.x >= from.x ? 1 : -1, sy = io.y >= from.y ? 1 : -1;
  auto at = [nx](int i, int j) { return static_cast<std::size_t>(j * (nx + 1) + i); };
  std::vector<std::array<int, 2>> cost(static_cast<std::size_t>((nx + 1) * (ny + 1)),
                                       {kInfinite, kInfinite});
  if (arrival == kAny) {
    cost[0] = {0, 0};
  } else {
    cost[0][arrival] = 0;
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (i == 0 && j == 0) continue;
      const Position p{from.x + sx * i, from.y + sy * j};
      const bool free = state.at(p) == CellKind::kEscort && p != skip;
      for (int heading = kHorizontal; heading <= kVertical; ++heading) {
        const int pi = heading == kHorizontal ? i - 1 : i;
        const int pj = heading == kHorizontal ? j : j - 1;
        if (pi < 0 || pj < 0) continue;
        const auto& prev = cost[at(pi, pj)];
        int& here = cost[at(i, j)][static_cast<std::size_t>(heading)];
        for (int last = kHorizontal; last <= kVertical; ++last) {
          if (prev[static_cast<std::size_t>(last)] >= kInfinite) continue;
          const int step = free ? 0 : (last == heading ? 4 : 2);
          here = std::min(here, prev[static_cast<std::size_t>(last)] + step);
        }
      }
    }
  }
  return std::min(cost.back()[0], cost.back()[1]);
}

}  // namespace

DistanceEstimator::DistanceEstimator(const GridState& state, const AssignmentPlanSet& plans)
    : state_(state),
      items_(state.targets()),
      escorts_(state.escorts()),
      item_ios_(target_ios(plans, items_.size())),
      target_counter_(state, CellKind::kTargetItem),
      onward_cache_(static_cast<std::size_t>(state.cell_count()) * items_.size() *
                        state.io_positions().size(),
                    -1) {
  const auto& ios = state_.io_positions();
  for (std::size_t j = 0; j < items_.size(); ++j) {
    int best = kInfinite;
    for (int io : item_ios_[j])
      best = std::min(best, route_cost(state_, items_[j], ios[static_cast<std::size_t>(io)],
                                       kAny, kNoCell));
    item_cost_.push_back(best);
  }
}

int DistanceEstimator::correction_t(Position e, Position tpos) const {
  if (target_counter_.count(e, tpos) == 0) return 0;
  const int nx = std::abs(tpos.x - e.x), ny = std::abs(tpos.y - e.y);
  const int sx = tpos.x >= e.x ? 1 : -1, sy = tpos.y >= e.y ? 1 : -1;
  // reach[j * (nx + 1) + i]: cell e + (sx*i, sy*j) is reachable by a clear
  // staircase path.
  std::vector<char> reach(static_cast<std::size_t>((nx + 1) * (ny + 1)), 0);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      auto& cell = reach[static_cast<std::size_t>(j * (nx + 1) + i)];
      if (i == 0 && j == 0) {
        cell = 1;
        continue;
      }
      if (state_.at({e.x + sx * i, e.y + sy * j}) == CellKind::kTargetItem) continue;
      bool from_prev_column = i > 0 && reach[static_cast<std::size_t>(j * (nx + 1) + i - 1)];
      bool from_prev_row = j > 0 && reach[static_cast<std::size_t>((j - 1) * (nx + 1) + i)];
      cell = from_prev_column || from_prev_row;
    }
  }
  return reach.back() ? 0 : 2;
}

int DistanceEstimator::onward_cost(std::size_t item, Position tpos, int io_index,
                                   Position e) const {
  const Position io = state_.io_positions()[static_cast<std::size_t>(io_index)];
  const Heading arrival = tpos.y != items_[item].y ? kVertical : kHorizontal;
  if (inside(e, tpos, io)) return route_cost(state_, tpos, io, arrival, e);
  const std::size_t key =
      (static_cast<std::size_t>(state_.index(tpos)) * items_.size() + item) *
          state_.io_positions().size() +
      static_cast<std::size_t>(io_index);
  int& slot = onward_cache_[key];
  if (slot < 0) slot = route_cost(state_, tpos, io, arrival, kNoCell);
  return slot;
}

int DistanceEstimator::correction_r(Position e, Position tpos) const {
  const auto& ios = state_.io_positions();
  int own = 0;
  int others = 0;
  for (std::size_t j = 0; j < items_.size(); ++j) {
    int best = kInfinite;
    if (manhattan(items_[j], tpos) == 1) {
      for (int io : item_ios_[j])
        if (shortens(items_[j], tpos, ios[static_cast<std::size_t>(io)]))
          best = std::min(best, onward_cost(j, tpos, io, e));
    }
    if (best < kInfinite) {
      own = std::max(own, best);
      continue;
    }
    // Item not carried through tpos: charge what it loses if e leaves its
    // route.
    bool on_route = false;
    for (int io : item_ios_[j])
      on_route = on_route || inside(e, items_[j], ios[static_cast<std::size_t>(io)]);
    if (!on_route) continue;
    int without = kInfinite;
    for (int io : item_ios_[j])
      without = std::min(without,
                         route_cost(state_, items_[j], ios[static_cast<std::size_t>(io)], kAny, e));
    others += without - item_cost_[j];
  }
  return own + others;
}

DistanceEstimate DistanceEstimator::estimate(Position e, Position tpos) const {
  return {manhattan(e, tpos), correction_t(e, tpos), correction_r(e, tpos)};
}

QVector DistanceEstimator::q_vector(const std::vector<Position>& targets) const {
  QVector out;
  out.targets = targets;
  out.q.assign(targets.size(), kUnreachable);
  std::vector<std::pair<int, Position>> by_distance;
  by_distance.reserve(escorts_.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Position tpos = targets[j];
    by_distance.clear();
    for (Position e : escorts_) by_distance.emplace_back(manhattan(e, tpos), e);
    std::sort(by_distance.begin(), by_distance.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int best = kUnreachable;
    for (const auto& [base, e] : by_distance) {
      // Corrections are nonnegative, so no farther escort can beat `best`.
      if (base >= best) break;
      const int r = correction_r(e, tpos);
      if (base + r >= best) continue;
      best = std::min(best, base + correction_t(e, tpos) + r);
    }
    out.q[j] = best;
    out.min_d = std::min(out.min_d, best);
  }
  return out;
}

int correction_t(const GridState& state, Position e, Position tpos) {
  return DistanceEstimator(state, AssignmentPlanSet{}).correction_t(e, tpos);
}

int reuse_shortfall(const GridState& state, Position tpos, Position io) {
  return manhattan(tpos, io) - existing_escorts_in_rectangle(state, tpos, io) + 1;
}

int correction_r(const GridState& state, Position e, Position tpos,
                 const AssignmentPlanSet& plans) {
  return DistanceEstimator(state, plans).correction_r(e, tpos);
}

DistanceEstimate estimate_distance(const GridState& state, Position e, Position tpos,
                                   const AssignmentPlanSet& plans) {
  return DistanceEstimator(state, plans).estimate(e, tpos);
}

QVector q_vector(const GridState& state, const std::vector<Position>& targets,
                 const AssignmentPlanSet& plans) {
  return DistanceEstimator(state, plans).q_vector(targets);
}

}  // namespace pbss
