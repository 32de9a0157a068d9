#include <doctest.h>

#include <algorithm>
#include <climits>
#include <random>

#include "assignment.hpp"
#include "escorts.hpp"
#include "support.hpp"

using namespace pbss;
using pbss::testing::contains;
using pbss::testing::random_state;

namespace {

int scan_escorts(const GridState& s, Position a, Position b) {
  int n = 0;
  for (int y = std::min(a.y, b.y); y <= std::max(a.y, b.y); ++y)
    for (int x = std::min(a.x, b.x); x <= std::max(a.x, b.x); ++x)
      n += s.at({x, y}) == CellKind::kEscort;
  return n;
}

std::vector<Position> brute_targets(const GridState& s, const AssignmentPlanSet& plans) {
  std::vector<Position> out;
  auto items = s.targets();
  for (std::size_t j = 0; j < items.size(); ++j) {
    const Position m = items[j];
    for (Position d : {Position{0, -1}, Position{0, 1}, Position{-1, 0}, Position{1, 0}}) {
      const Position p{m.x + d.x, m.y + d.y};
      if (!s.in_bounds(p) || s.at(p) == CellKind::kTargetItem || contains(out, p)) continue;
      for (const auto& plan : plans.plans) {
        const Position io = s.io_positions()[plan.io_of_item[j]];
        if (manhattan(p, io) < manhattan(m, io)) {
          out.push_back(p);
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](Position a, Position b) { return s.index(a) < s.index(b); });
  return out;
}

}  // namespace

TEST_SUITE("escort-analysis") {
  TEST_CASE("escorts in a rectangle") {
    GridState s = parse_map("3 3\nIO 0,0\n.#.\n#T#\n..#\n");
    CHECK(existing_escorts_in_rectangle(s, {1, 0}, {1, 0}) == 0);
    CHECK(existing_escorts_in_rectangle(s, {0, 0}, {0, 0}) == 1);
    CHECK(existing_escorts_in_rectangle(s, {0, 0}, {2, 2}) == 4);
    CHECK(existing_escorts_in_rectangle(s, {2, 2}, {0, 1}) == 2);
  }

  TEST_CASE("required escorts for an item three cells from its IO") {
    // item (2,1), IO (0,2), one escort inside their rectangle at (1,1)
    GridState s = parse_map("3 3\nIO 0,2\n###\n#.T\n###\n");
    CHECK(manhattan({2, 1}, {0, 2}) == 3);
    CHECK(existing_escorts_in_rectangle(s, {2, 1}, {0, 2}) == 1);
    CHECK(required_escorts(s, {2, 1}, {0, 2}) == 2);

    GridState adjacent = parse_map("2 1\nIO 0,0\n.T\n");
    CHECK(required_escorts(adjacent, {1, 0}, {0, 0}) == 0);

    GridState surplus = parse_map("3 2\nIO 0,0\n..T\n..#\n");
    CHECK(required_escorts(surplus, {2, 0}, {0, 0}) == 0);
  }

  TEST_CASE("demand totals") {
    GridState none(2, 2, {{0, 0}});
    CHECK(min_required_escorts(none, optimal_assignments(none)) == 0);

    GridState s = parse_map("4 4\nIO 0,3 3,3\n####\n#T##\n.T##\n###.\n");
    AssignmentPlanSet plans = optimal_assignments(s);
    for (const auto& plan : plans.plans) {
      EscortDemand demand = escort_demand(s, plan);
      int sum = 0;
      for (int v : demand.per_item) sum += v;
      CHECK(demand.total == sum);
      CHECK(total_required_escorts(s, plan) == demand.total);
    }
    CHECK(min_required_escorts(s, plans) == 4);
  }

  TEST_CASE("escort target positions on small boards") {
    GridState line = parse_map("3 3\nIO 0,0\n#T#\n###\n..#\n");
    CHECK(escort_target_positions(line, optimal_assignments(line)) == std::vector<Position>{{0, 0}});

    GridState centre = parse_map("3 3\nIO 0,0\n##.\n#T#\n###\n");
    CHECK(escort_target_positions(centre, optimal_assignments(centre)) ==
          std::vector<Position>{{1, 0}, {0, 1}});

    // another target item is never a target position
    GridState pair = parse_map("3 1\nIO 0,0 2,0\n#TT\n");
    auto etp = escort_target_positions(pair, optimal_assignments(pair));
    CHECK_FALSE(contains(etp, {2, 0}));
  }

  TEST_CASE("required escorts match a direct cell scan") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 300; ++n) {
      GridState s = random_state(rng, {6, 6, 12, 3, 4, true});
      for (Position m : s.targets())
        for (Position io : s.io_positions()) {
          CHECK(existing_escorts_in_rectangle(s, m, io) == scan_escorts(s, m, io));
          CHECK(required_escorts(s, m, io) == std::max(0, manhattan(m, io) - scan_escorts(s, m, io)));
        }
    }
  }

  TEST_CASE("minimum demand matches enumeration over the plan set") {
    std::mt19937_64 rng(32);
    for (int n = 0; n < 200; ++n) {
      GridState s = random_state(rng, {6, 6, 10, 4, 4, true});
      AssignmentPlanSet plans = optimal_assignments(s);
      int best = INT_MAX;
      auto items = s.targets();
      for (const auto& plan : plans.plans) {
        int total = 0;
        for (std::size_t j = 0; j < items.size(); ++j) {
          Position io = s.io_positions()[plan.io_of_item[j]];
          total += std::max(0, manhattan(items[j], io) - scan_escorts(s, items[j], io));
        }
        best = std::min(best, total);
      }
      CHECK(min_required_escorts(s, plans) == best);
    }
  }

  TEST_CASE("sign condition is equivalent to a distance decrease") {
    for (int ix = 0; ix < 5; ++ix)
      for (int iy = 0; iy < 5; ++iy)
        for (int mx = 0; mx < 5; ++mx)
          for (int my = 0; my < 5; ++my)
            for (Position d : {Position{0, -1}, Position{0, 1}, Position{-1, 0}, Position{1, 0}}) {
              const Position io{ix, iy}, m{mx, my}, p{mx + d.x, my + d.y};
              CHECK(shortens(m, p, io) == (manhattan(p, io) == manhattan(m, io) - 1));
            }
  }

  TEST_CASE("escort target positions match brute force") {
    std::mt19937_64 rng(33);
    for (int n = 0; n < 300; ++n) {
      GridState s = random_state(rng, {6, 6, 6, 4, 4, true});
      AssignmentPlanSet plans = optimal_assignments(s);
      auto etp = escort_target_positions(s, plans);
      CHECK(etp == brute_targets(s, plans));
      for (Position p : etp) {
        bool next_to_item = false;
        for (Position m : s.targets()) next_to_item = next_to_item || manhattan(m, p) == 1;
        CHECK(next_to_item);
      }
      if (plans.d_min > 0) CHECK_FALSE(etp.empty());
    }
  }

  TEST_CASE("an extra escort inside the rectangle never raises the demand") {
    std::mt19937_64 rng(34);
    for (int n = 0; n < 200; ++n) {
      GridState s = random_state(rng, {6, 6, 6, 2, 3, true});
      for (Position m : s.targets())
        for (Position io : s.io_positions())
          for (int y = std::min(m.y, io.y); y <= std::max(m.y, io.y); ++y)
            for (int x = std::min(m.x, io.x); x <= std::max(m.x, io.x); ++x) {
              if (s.at({x, y}) != CellKind::kOtherItem) continue;
              GridState more = s.with({x, y}, CellKind::kEscort);
              CHECK(required_escorts(more, m, io) <= required_escorts(s, m, io));
            }
    }
  }
}
