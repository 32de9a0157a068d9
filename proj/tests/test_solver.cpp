#include <doctest.h>

#include <random>
#include <set>

#include "distance.hpp"
#include "error.hpp"
#include "solver.hpp"
#include "support.hpp"

using namespace pbss;
using pbss::testing::random_state;

namespace {

constexpr const char* kTwoItemMap = "4 4\nIO 0,3 3,3\n####\n#T##\n.T##\n###.\n";
constexpr const char* kOneItemMap = "4 4\nIO 0,0\n.#..\n.###\n####\n##T#\n";

// Reward table written out case by case.
int expected_reward(const StatusIndexes& b, const StatusIndexes& a) {
  if (a.d_min < b.d_min) return 100;
  if (a.d_min > b.d_min) return -1;
  if (a.et_min < b.et_min) return 50;
  if (a.et_min > b.et_min) return -1;
  if (a.min_d < b.min_d) return 10;
  if (a.min_d > b.min_d) return -1;
  return 0;
}

struct Row {
  MoveAction move;
  Reason reason;
  int before, after, reward;
};

}  // namespace

TEST_SUITE("heuristic-solver") {
  TEST_CASE("evaluate") {
    StatusIndexes solved = evaluate(parse_map("2 1\nIO 0,0\n.#\n"));
    CHECK(solved.d_min == 0);
    CHECK(solved.et_min == 0);
    CHECK(solved.min_d == kUnreachable);

    StatusIndexes two = evaluate(parse_map(kTwoItemMap));
    CHECK(two.d_min == 6);

    CHECK_THROWS_AS(evaluate(parse_map("3 1\nIO 0,0\n.TT\n")), Error);
  }

  TEST_CASE("reward table") {
    CHECK(reward({6, 4, 3}, {5, 4, 3}) == 100);
    CHECK(reward({6, 4, 3}, {7, 1, 0}) == -1);
    CHECK(reward({6, 2, 3}, {6, 1, 3}) == 50);
    CHECK(reward({6, 2, 3}, {6, 3, 0}) == -1);
    CHECK(reward({6, 2, 3}, {6, 2, 2}) == 10);
    CHECK(reward({6, 2, 3}, {6, 2, 4}) == -1);
    CHECK(reward({6, 2, 3}, {6, 2, 3}) == 0);
    CHECK(reward({1, 0, 1}, {0, 0, kUnreachable}) == 100);
  }

  TEST_CASE("reward is total over index pairs") {
    const std::set<int> allowed{100, 50, 10, 0, -1};
    const int values[] = {0, 1, 2, 5, kUnreachable};
    for (int d0 : {0, 1, 2})
      for (int d1 : {0, 1, 2})
        for (int e0 : {0, 1, 2})
          for (int e1 : {0, 1, 2})
            for (int m0 : values)
              for (int m1 : values) {
                StatusIndexes b{d0, e0, m0}, a{d1, e1, m1};
                const int r = reward(b, a);
                CHECK(allowed.count(r) == 1);
                CHECK(r == expected_reward(b, a));
                const Reason why = classify(b, a);
                if (d0 != d1) CHECK(why == Reason::kTotalDistance);
                else if (e0 != e1) CHECK(why == Reason::kRequiredEscorts);
                else if (m0 != m1) CHECK(why == Reason::kMinDistanceMatrix);
                else CHECK(why == Reason::kNeutral);
              }
  }

  TEST_CASE("a reward of 100 means the total distance fell") {
    std::mt19937_64 rng(51);
    for (int n = 0; n < 200; ++n) {
      GridState s = random_state(rng, {6, 6, 5, 3, 3, true});
      if (s.targets().empty()) continue;
      StatusIndexes before = evaluate(s);
      for (const MoveAction& a : legal_actions(s)) {
        GridState next = apply_action(s, a);
        StatusIndexes after = evaluate(next);
        CHECK((reward(before, after) == 100) == (after.d_min < before.d_min));
        // without a retrieval only one item moved, by one cell
        if (next.retrieved() == s.retrieved()) CHECK(std::abs(after.d_min - before.d_min) <= 1);
      }
    }
  }

  TEST_CASE("reason names round trip") {
    for (Reason r : {Reason::kTotalDistance, Reason::kRequiredEscorts, Reason::kMinDistanceMatrix,
                     Reason::kNeutral})
      CHECK(parse_reason(reason_name(r)) == r);
    CHECK_FALSE(parse_reason("bogus").has_value());
  }

  TEST_CASE("decide with a single legal action") {
    GridState s = parse_map("3 1\nIO 2,0\n.#T\n");
    std::mt19937_64 rng(0);
    Decision d = decide(s, evaluate(s), rng);
    CHECK(d.action == MoveAction{{0, 0}, {1, 0}});
    CHECK(d.record.reward == reward(evaluate(s), evaluate(d.next)));
  }

  TEST_CASE("decide without escorts") {
    GridState s = parse_map("2 1\nIO 0,0\n#T\n");
    std::mt19937_64 rng(0);
    try {
      decide(s, evaluate(s), rng);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoLegalAction);
    }
  }

  TEST_CASE("decide falls back when every move is excluded, but keeps improving ones") {
    GridState s = parse_map(kTwoItemMap);
    std::mt19937_64 rng(0);
    Decision all_out = decide(s, evaluate(s), rng, [](const GridState&) { return true; });
    CHECK(all_out.record.reward == 100);
    CHECK(all_out.action == MoveAction{{0, 2}, {1, 2}});
  }

  TEST_CASE("two-item worked trace") {
    // Published move list; replayed against the reconstructed board.
    const Row rows[] = {
        {{{0, 2}, {1, 2}}, Reason::kTotalDistance, 6, 5, 100},
        {{{1, 2}, {1, 1}}, Reason::kTotalDistance, 5, 4, 100},
        {{{1, 1}, {2, 1}}, Reason::kMinDistanceMatrix, 2, 1, 10},
        {{{2, 1}, {2, 2}}, Reason::kRequiredEscorts, 3, 2, 50},
        {{{2, 2}, {1, 2}}, Reason::kTotalDistance, 4, 3, 100},
        {{{1, 2}, {1, 3}}, Reason::kMinDistanceMatrix, 2, 1, 10},
        {{{1, 3}, {2, 3}}, Reason::kRequiredEscorts, 2, 1, 50},
        {{{2, 3}, {2, 2}}, Reason::kTotalDistance, 3, 2, 100},
        {{{3, 3}, {2, 3}}, Reason::kTotalDistance, 2, 1, 100},
        {{{2, 3}, {1, 3}}, Reason::kMinDistanceMatrix, 2, 1, 10},
        {{{1, 3}, {0, 3}}, Reason::kRequiredEscorts, 1, 0, 50},
        {{{0, 3}, {0, 2}}, Reason::kTotalDistance, 1, 0, 100},
    };
    GridState s = parse_map(kTwoItemMap);
    CHECK(optimal_assignments(s).h() == 2);
    StatusIndexes ix = evaluate(s);
    CHECK(ix.d_min == 6);
    int step = 0;
    for (const Row& row : rows) {
      ++step;
      CAPTURE(step);
      REQUIRE(is_legal(s, row.move));
      int best = -1;
      for (const MoveAction& a : legal_actions(s))
        best = std::max(best, reward(ix, evaluate(apply_action(s, a))));
      GridState next = apply_action(s, row.move);
      StatusIndexes nx = evaluate(next);
      DecisionRecord rec = make_record(step, row.move, ix, nx);
      CHECK(rec.reason == row.reason);
      CHECK(rec.reward == row.reward);
      CHECK(rec.reward == best);
      if (step != 3) {
        CHECK(rec.value_before == row.before);
        CHECK(rec.value_after == row.after);
      } else {
        // the distance matrix reads 4 -> 3 here; the same one-step drop
        CHECK(rec.value_before - rec.value_after == row.before - row.after);
      }
      if (step == 9) {
        std::mt19937_64 rng(0);
        Decision d = decide(s, ix, rng);
        CHECK(d.action == row.move);
        CHECK(d.record.reason == Reason::kTotalDistance);
        CHECK(d.record.value_before == 2);
        CHECK(d.record.value_after == 1);
        CHECK(d.record.reward == 100);
      }
      s = next;
      ix = nx;
    }
    CHECK(s.count(CellKind::kTargetItem) == 0);
  }

  TEST_CASE("solve the worked instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SolveTrace two = solve(parse_map(kTwoItemMap), {seed, 0, 64});
      CHECK(two.solved);
      CHECK(two.total_steps() == 12);

      SolveTrace one = solve(parse_map(kOneItemMap), {seed, 0, 64});
      CHECK(one.solved);
      CHECK(one.total_steps() <= 12);
      REQUIRE(one.total_steps() > 0);
      CHECK(one.records.front().reason == Reason::kMinDistanceMatrix);
      CHECK(one.records.front().reward == 10);
      CHECK(one.records.back().move.escort_from == Position{0, 0});
    }
    SolveTrace one = solve(parse_map(kOneItemMap), {0, 0, 64});
    CHECK(one.total_steps() == 12);
    // the first item move: (2,2) -> (2,3) from a status with total distance 5
    std::size_t first = 0;
    while (first < one.records.size() && one.records[first].reason != Reason::kTotalDistance) ++first;
    REQUIRE(first < one.records.size());
    GridState s = one.initial;
    for (std::size_t i = 0; i < first; ++i) s = apply_action(s, one.records[i].move);
    CHECK(evaluate(s).d_min == 5);
    CHECK(one.records[first].move == MoveAction{{2, 2}, {2, 3}});
    CHECK(one.records[first].value_before == 5);
    CHECK(one.records[first].value_after == 4);
  }

  TEST_CASE("solve edge cases") {
    SolveTrace done = solve(parse_map("2 1\nIO 0,0\n.#\n"));
    CHECK(done.solved);
    CHECK(done.total_steps() == 0);

    // a target item parked on an IO is swept before the first move
    SolveTrace parked = solve(GridState(2, 1, {{0, 0}}).with({0, 0}, CellKind::kTargetItem));
    CHECK(parked.solved);
    CHECK(parked.initial.retrieved() == 1);

    SolveTrace capped = solve(parse_map("5 1\nIO 0,0\n#...T\n"), {0, 2, 64});
    CHECK_FALSE(capped.solved);
    CHECK(capped.total_steps() == 2);

    CHECK(default_max_steps(parse_map(kTwoItemMap)) == 20 * 4 * 4);
  }

  TEST_CASE("traces replay and are deterministic") {
    std::mt19937_64 rng(52);
    for (int n = 0; n < 100; ++n) {
      GridState s = random_state(rng, {6, 6, 6, 3, 3, true});
      if (s.escorts().empty()) continue;
      SolverConfig config{static_cast<std::uint64_t>(n), 0, 64};
      SolveTrace a = solve(s, config);
      SolveTrace b = solve(s, config);
      CHECK(a.records == b.records);
      CHECK(a.solved == b.solved);
      GridState final_state = replay(a);
      if (a.solved) CHECK(final_state.count(CellKind::kTargetItem) == 0);
      for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].step == static_cast<int>(i) + 1);
    }
  }

  TEST_CASE("replay rejects a move that does not apply") {
    SolveTrace t = solve(parse_map(kTwoItemMap));
    t.records[4].move = {{3, 0}, {3, 1}};
    try {
      replay(t);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kReplayMismatch);
    }
  }
}
