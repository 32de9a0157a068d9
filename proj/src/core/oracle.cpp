#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "error.hpp"
#include "escorts.hpp"

namespace pbss {

namespace {

constexpr int kMaxCells = 128;

template <int Words>
struct Board {
  std::array<std::uint64_t, Words> escorts{};
  std::array<std::uint64_t, Words> targets{};

  bool escort(int i) const { return (escorts[i >> 6] >> (i & 63)) & 1U; }
  bool target(int i) const { return (targets[i >> 6] >> (i & 63)) & 1U; }
  void flip_escort(int i) { escorts[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void flip_target(int i) { targets[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool solved() const {
    return std::all_of(targets.begin(), targets.end(), [](std::uint64_t w) { return w == 0; });
  }

  friend bool operator==(const Board&, const Board&) = default;
};

template <int Words>
struct BoardHash {
  std::size_t operator()(const Board<Words>& b) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t w) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
    };
    for (auto w : b.escorts) mix(w);
    for (auto w : b.targets) mix(w);
    return static_cast<std::size_t>(h);
  }
};

template <class Fn>
void for_each_bit(std::uint64_t word, int base, Fn&& fn) {
  while (word) {
    int bit = std::countr_zero(word);
    fn(base + bit);
    word &= word - 1;
  }
}

// Static grid geometry shared by every board of one search.
struct Geometry {
  int width = 0;
  int height = 0;
  std::vector<Position> ios;
  std::vector<char> is_io;
  std::vector<std::array<int, 4>> neighbours;  // -1 when off-grid

  explicit Geometry(const GridState& state)
      : width(state.width()), height(state.height()), ios(state.io_positions()) {
    const int n = state.cell_count();
    is_io.assign(static_cast<std::size_t>(n), 0);
    for (Position p : ios) is_io[static_cast<std::size_t>(state.index(p))] = 1;
    neighbours.resize(static_cast<std::size_t>(n));
    constexpr Position dirs[] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
    for (int i = 0; i < n; ++i) {
      Position p = state.position(i);
      for (int d = 0; d < 4; ++d) {
        Position q{p.x + dirs[d].x, p.y + dirs[d].y};
        neighbours[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
            state.in_bounds(q) ? q.y * width + q.x : -1;
      }
    }
  }

  Position pos(int i) const { return {i % width, i / width}; }
  int cells() const { return width * height; }
};

template <int Words>
Board<Words> pack(const GridState& state) {
  Board<Words> b;
  for (int i = 0; i < state.cell_count(); ++i) {
    if (state.at_index(i) == CellKind::kEscort) b.flip_escort(i);
    if (state.at_index(i) == CellKind::kTargetItem) b.flip_target(i);
  }
  return b;
}

template <int Words>
std::vector<int> bits_of(const std::array<std::uint64_t, Words>& words) {
  std::vector<int> out;
  for (int w = 0; w < Words; ++w) for_each_bit(words[w], w * 64, [&](int i) { out.push_back(i); });
  return out;
}

// Cheapest route for the single item to its IO where entering a cell costs 1,
// plus 1 more if that cell holds no escort yet: each such cell needs its own
// escort arrival before the item can step in.
template <int Words>
int route_bound(const Geometry& g, const Board<Words>& b, int item, int io) {
  const int n = g.cells();
  std::vector<int> dist(static_cast<std::size_t>(n), std::numeric_limits<int>::max());
  std::array<std::vector<int>, 3> buckets;  // Dial's algorithm, edge weights 1..2
  dist[static_cast<std::size_t>(item)] = 0;
  buckets[0].push_back(item);
  int current = 0;
  std::size_t pending = 1;
  while (pending > 0) {
    auto& bucket = buckets[static_cast<std::size_t>(current % 3)];
    while (!bucket.empty()) {
      int cell = bucket.back();
      bucket.pop_back();
      --pending;
      if (dist[static_cast<std::size_t>(cell)] != current) continue;
      if (cell == io) return current;
      for (int next : g.neighbours[static_cast<std::size_t>(cell)]) {
        if (next < 0) continue;
        int nd = current + 1 + (b.escort(next) ? 0 : 1);
        if (nd < dist[static_cast<std::size_t>(next)]) {
          dist[static_cast<std::size_t>(next)] = nd;
          buckets[static_cast<std::size_t>(nd % 3)].push_back(next);
          ++pending;
        }
      }
    }
    ++current;
  }
  return dist[static_cast<std::size_t>(io)];
}

// Bound for one target item on its own. Before the item first moves, some
// escort must walk to the cell it moves into; a first move that does not
// shorten the way to the IO finally used costs two extra item moves.
template <int Words>
int item_bound(const Geometry& g, const Board<Words>& b, int item) {
  const Position at = g.pos(item);
  constexpr int kFar = std::numeric_limits<int>::max() / 4;
  std::array<int, 4> approach;  // escort travel to each neighbour
  approach.fill(kFar);
  for (int w = 0; w < Words; ++w) {
    for_each_bit(b.escorts[w], w * 64, [&](int e) {
      for (std::size_t d = 0; d < 4; ++d) {
        int next = g.neighbours[static_cast<std::size_t>(item)][d];
        if (next >= 0) approach[d] = std::min(approach[d], manhattan(g.pos(e), g.pos(next)));
      }
    });
  }
  const int any_side = *std::min_element(approach.begin(), approach.end());
  int travel = kFar;
  int route = kFar;
  for (Position io : g.ios) {
    int toward = kFar;
    for (std::size_t d = 0; d < 4; ++d) {
      int next = g.neighbours[static_cast<std::size_t>(item)][d];
      if (next >= 0 && shortens(at, g.pos(next), io)) toward = std::min(toward, approach[d]);
    }
    travel = std::min(travel, manhattan(at, io) + std::min(toward, any_side + 2));
    route = std::min(route, route_bound(g, b, item, io.y * g.width + io.x));
  }
  return std::max(travel, route);
}

template <int Words>
int lower_bound(const Geometry& g, const Board<Words>& b) {
  std::vector<int> item_cells = bits_of<Words>(b.targets);
  if (item_cells.empty()) return 0;

  // Every move shifts one item by one cell, so the sum of nearest-IO
  // distances drops by at most one per move. IOs may be reused after a
  // retrieval, hence nearest rather than an injective assignment.
  int total = 0;
  bool ready = false;
  int best_item = 0;
  for (int cell : item_cells) {
    const Position at = g.pos(cell);
    int nearest = std::numeric_limits<int>::max();
    for (Position io : g.ios) nearest = std::min(nearest, manhattan(at, io));
    total += nearest;
    for (int next : g.neighbours[static_cast<std::size_t>(cell)]) {
      if (next < 0 || !b.escort(next)) continue;
      for (Position io : g.ios)
        ready = ready || (manhattan(at, io) == nearest && shortens(at, g.pos(next), io));
    }
    best_item = std::max(best_item, item_bound(g, b, cell));
  }
  return std::max(total + (ready ? 0 : 1), best_item);
}

template <int Words, class Fn>
void for_each_successor(const Geometry& g, const Board<Words>& b, Fn&& fn) {
  for (int w = 0; w < Words; ++w) {
    for_each_bit(b.escorts[w], w * 64, [&](int e) {
      for (int next : g.neighbours[static_cast<std::size_t>(e)]) {
        if (next < 0 || b.escort(next)) continue;
        Board<Words> child = b;
        child.flip_escort(e);
        child.flip_escort(next);
        if (b.target(next)) {
          child.flip_target(next);
          child.flip_target(e);
          if (g.is_io[static_cast<std::size_t>(e)]) {
            child.flip_target(e);
            child.flip_escort(e);
          }
        }
        fn(child);
      }
    });
  }
}

template <int Words>
OracleResult astar(const GridState& initial, const OracleLimits& limits) {
  const Geometry g(initial);
  const Board<Words> start = pack<Words>(initial);

  struct Entry {
    int f;
    int g;
    Board<Words> board;
  };
  // Lowest f first; among equal f prefer deeper nodes.
  auto worse = [](const Entry& a, const Entry& b) { return a.f != b.f ? a.f > b.f : a.g < b.g; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  std::unordered_map<Board<Words>, int, BoardHash<Words>> best_g;

  OracleResult result;
  best_g.emplace(start, 0);
  open.push({lower_bound(g, start), 0, start});
  while (!open.empty()) {
    Entry top = open.top();
    open.pop();
    auto it = best_g.find(top.board);
    if (it != best_g.end() && it->second < top.g) continue;
    if (top.board.solved()) {
      result.steps = top.g;
      return result;
    }
    if (result.expanded >= limits.max_expanded_states) {
      result.limit_reached = true;
      return result;
    }
    ++result.expanded;
    if (top.g >= limits.max_depth) {
      result.limit_reached = true;
      continue;
    }
    const int child_g = top.g + 1;
    for_each_successor<Words>(g, top.board, [&](const Board<Words>& child) {
      auto [slot, inserted] = best_g.try_emplace(child, child_g);
      if (!inserted) {
        if (slot->second <= child_g) return;
        slot->second = child_g;
      }
      open.push({child_g + lower_bound(g, child), child_g, child});
    });
  }
  return result;
}

void check_oracle_input(const GridState& state) {
  if (state.count(CellKind::kTargetItem) > static_cast<int>(state.io_positions().size()))
    throw Error(ErrorCode::kInfeasible, "target items outnumber IOs");
  if (state.cell_count() > kMaxCells)
    throw Error(ErrorCode::kInvalidArgument,
                "exact search supports at most " + std::to_string(kMaxCells) + " cells");
}

}  // namespace

int remaining_moves_lower_bound(const GridState& state) {
  check_oracle_input(state);
  GridState swept = sweep_retrievals(state);
  const Geometry g(swept);
  if (swept.cell_count() <= 64) return lower_bound<1>(g, pack<1>(swept));
  return lower_bound<2>(g, pack<2>(swept));
}

OracleResult solve_optimal(const GridState& initial, const OracleLimits& limits) {
  check_oracle_input(initial);
  GridState swept = sweep_retrievals(initial);
  if (swept.cell_count() <= 64) return astar<1>(swept, limits);
  return astar<2>(swept, limits);
}

std::optional<int> optimal_steps(const GridState& initial, const OracleLimits& limits) {
  return solve_optimal(initial, limits).steps;
}

OracleResult bfs_optimal(const GridState& initial, const OracleLimits& limits) {
  if (initial.count(CellKind::kTargetItem) > static_cast<int>(initial.io_positions().size()))
    throw Error(ErrorCode::kInfeasible, "target items outnumber IOs");
  OracleResult result;
  GridState start = sweep_retrievals(initial);
  if (start.count(CellKind::kTargetItem) == 0) {
    result.steps = 0;
    return result;
  }
  std::unordered_set<std::string> seen{start.canonical_key()};
  std::deque<std::pair<GridState, int>> frontier;
  frontier.emplace_back(start, 0);
  while (!frontier.empty()) {
    auto [state, depth] = std::move(frontier.front());
    frontier.pop_front();
    if (result.expanded >= limits.max_expanded_states) {
      result.limit_reached = true;
      return result;
    }
    ++result.expanded;
    if (depth >= limits.max_depth) {
      result.limit_reached = true;
      continue;
    }
    for (const MoveAction& action : legal_actions(state)) {
      GridState next = apply_action(state, action);
      if (next.count(CellKind::kTargetItem) == 0) {
        result.steps = depth + 1;
        return result;
      }
      if (seen.insert(next.canonical_key()).second) frontier.emplace_back(std::move(next), depth + 1);
    }
  }
  return result;
}

double gap_percent(std::span<const StepPair> pairs) {
  if (pairs.empty()) return 0.0;
  double sum = 0.0;
  for (const StepPair& p : pairs) {
    if (p.optimal <= 0)
      throw Error(ErrorCode::kInvalidArgument, "gap needs strictly positive optimal step counts");
    sum += 100.0 * (p.heuristic - p.optimal) / p.optimal;
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace pbss
