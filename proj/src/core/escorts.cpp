#include "escorts.hpp"

#include <algorithm>
#include <limits>

namespace pbss {

namespace {
constexpr Position kNeighbours[] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
}

CellCounter::CellCounter(const GridState& state, CellKind kind)
    : width_(state.width()),
      prefix_(static_cast<std::size_t>((state.width() + 1) * (state.height() + 1)), 0) {
  const int stride = width_ + 1;
  for (int y = 0; y < state.height(); ++y) {
    int row = 0;
    for (int x = 0; x < width_; ++x) {
      row += state.at({x, y}) == kind ? 1 : 0;
      prefix_[static_cast<std::size_t>((y + 1) * stride + x + 1)] =
          prefix_[static_cast<std::size_t>(y * stride + x + 1)] + row;
    }
  }
}

int CellCounter::count(Position a, Position b) const {
  const int stride = width_ + 1;
  int x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x) + 1;
  int y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y) + 1;
  auto at = [&](int x, int y) { return prefix_[static_cast<std::size_t>(y * stride + x)]; };
  return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
}

int existing_escorts_in_rectangle(const GridState& state, Position a, Position b) {
  int n = 0;
  for (int y = std::min(a.y, b.y); y <= std::max(a.y, b.y); ++y)
    for (int x = std::min(a.x, b.x); x <= std::max(a.x, b.x); ++x)
      if (state.at({x, y}) == CellKind::kEscort) ++n;
  return n;
}

int required_escorts(const GridState& state, Position item, Position io) {
  return std::max(0, manhattan(item, io) - existing_escorts_in_rectangle(state, item, io));
}

EscortDemand escort_demand(const GridState& state, const AssignmentPlan& plan) {
  auto items = state.targets();
  const auto& ios = state.io_positions();
  // Range checks shared with plan_distance.
  plan_distance(items, ios, plan);
  CellCounter escorts(state, CellKind::kEscort);
  EscortDemand demand;
  for (std::size_t j = 0; j < items.size(); ++j) {
    Position io = ios[static_cast<std::size_t>(plan.io_of_item[j])];
    int en = std::max(0, manhattan(items[j], io) - escorts.count(items[j], io));
    demand.per_item.push_back(en);
    demand.total += en;
  }
  return demand;
}

int total_required_escorts(const GridState& state, const AssignmentPlan& plan) {
  return escort_demand(state, plan).total;
}

int min_required_escorts(const GridState& state, const AssignmentPlanSet& plans) {
  auto items = state.targets();
  if (items.empty()) return 0;
  const auto& ios = state.io_positions();
  CellCounter escorts(state, CellKind::kEscort);
  int best = std::numeric_limits<int>::max();
  for (const auto& plan : plans.plans) {
    int total = 0;
    for (std::size_t j = 0; j < items.size(); ++j) {
      Position io = ios[static_cast<std::size_t>(plan.io_of_item[j])];
      total += std::max(0, manhattan(items[j], io) - escorts.count(items[j], io));
    }
    best = std::min(best, total);
  }
  return best;
}

std::vector<std::vector<int>> target_ios(const AssignmentPlanSet& plans, std::size_t item_count) {
  std::vector<std::vector<int>> out(item_count);
  for (const auto& plan : plans.plans)
    for (std::size_t j = 0; j < item_count && j < plan.io_of_item.size(); ++j)
      out[j].push_back(plan.io_of_item[j]);
  for (auto& ios : out) {
    std::sort(ios.begin(), ios.end());
    ios.erase(std::unique(ios.begin(), ios.end()), ios.end());
  }
  return out;
}

std::vector<Position> escort_target_positions(const GridState& state,
                                              const AssignmentPlanSet& plans) {
  auto items = state.targets();
  auto per_item = target_ios(plans, items.size());
  const auto& ios = state.io_positions();
  std::vector<Position> out;
  for (std::size_t j = 0; j < items.size(); ++j) {
    for (Position d : kNeighbours) {
      Position p{items[j].x + d.x, items[j].y + d.y};
      if (!state.in_bounds(p) || state.at(p) == CellKind::kTargetItem) continue;
      bool ok = std::any_of(per_item[j].begin(), per_item[j].end(), [&](int io) {
        return shortens(items[j], p, ios[static_cast<std::size_t>(io)]);
      });
      if (ok) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](Position a, Position b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pbss
