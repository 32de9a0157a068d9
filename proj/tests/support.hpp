#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "grid.hpp"

namespace pbss::testing {

struct RandomShape {
  int max_width = 5;
  int max_height = 5;
  int max_escorts = 3;
  int max_targets = 2;
  int max_ios = 3;
  bool sweep = true;  // retrieve targets that landed on an IO
};

// Uniform random board; independent of the library's generator so the two can
// be checked against each other.
inline GridState random_state(std::mt19937_64& rng, const RandomShape& shape) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    const int w = pick(1, shape.max_width), h = pick(1, shape.max_height);
    const int cells = w * h;
    const int n_io = pick(1, std::min(shape.max_ios, cells));
    std::vector<int> order(static_cast<std::size_t>(cells));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Position> ios;
    for (int i = 0; i < n_io; ++i) ios.push_back({order[i] % w, order[i] / w});
    const int n_t = pick(0, std::min(shape.max_targets, n_io));
    const int n_e = pick(0, shape.max_escorts);
    if (n_t + n_e > cells) continue;
    std::shuffle(order.begin(), order.end(), rng);
    GridState s(w, h, ios);
    int k = 0;
    for (int i = 0; i < n_t; ++i, ++k) s = s.with({order[k] % w, order[k] / w}, CellKind::kTargetItem);
    for (int i = 0; i < n_e; ++i, ++k) s = s.with({order[k] % w, order[k] / w}, CellKind::kEscort);
    return shape.sweep ? sweep_retrievals(s) : s;
  }
}

inline bool contains(const std::vector<Position>& v, Position p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace pbss::testing
