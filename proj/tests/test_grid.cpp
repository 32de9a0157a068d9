#include <doctest.h>

#include <random>

#include "error.hpp"
#include "grid.hpp"
#include "support.hpp"

using namespace pbss;
using pbss::testing::random_state;

namespace {

int differing_cells(const GridState& a, const GridState& b) {
  int n = 0;
  for (int i = 0; i < a.cell_count(); ++i) n += a.at_index(i) != b.at_index(i);
  return n;
}

// Swap without the retrieval sweep, for locality checks.
GridState raw_swap(const GridState& s, const MoveAction& a) {
  return s.with(a.escort_from, s.at(a.escort_to)).with(a.escort_to, CellKind::kEscort);
}

}  // namespace

TEST_SUITE("grid-core") {
  TEST_CASE("manhattan") {
    CHECK(manhattan({0, 0}, {0, 0}) == 0);
    CHECK(manhattan({1, 0}, {0, 0}) == 1);
    CHECK(manhattan({3, 1}, {1, 4}) == 5);
    // an item three cells from its IO, two across and one down
    CHECK(manhattan({2, 1}, {0, 2}) == 3);
  }

  TEST_CASE("legal actions on tiny boards") {
    CHECK(legal_actions(parse_map("1 1\nIO 0,0\n.\n")).empty());
    auto one = legal_actions(parse_map("2 1\nIO\n.#\n"));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == MoveAction{{0, 0}, {1, 0}});
    CHECK(legal_actions(parse_map("2 1\nIO\n..\n")).empty());
  }

  TEST_CASE("interior escort of a 4x4 board has four actions in up, down, left, right order") {
    GridState s = parse_map("4 4\nIO 0,3\n####\n#.##\n##T#\n####\n");
    auto actions = legal_actions(s);
    REQUIRE(actions.size() == 4);
    CHECK(actions[0].escort_to == Position{1, 0});
    CHECK(actions[1].escort_to == Position{1, 2});
    CHECK(actions[2].escort_to == Position{0, 1});
    CHECK(actions[3].escort_to == Position{2, 1});
  }

  TEST_CASE("legal actions are row-major by escort") {
    auto actions = legal_actions(parse_map("3 2\nIO\n#.#\n.##\n"));
    REQUIRE(actions.size() == 5);
    CHECK(actions[0] == MoveAction{{1, 0}, {1, 1}});
    CHECK(actions[1] == MoveAction{{1, 0}, {0, 0}});
    CHECK(actions[2] == MoveAction{{1, 0}, {2, 0}});
    CHECK(actions[3] == MoveAction{{0, 1}, {0, 0}});
    CHECK(actions[4] == MoveAction{{0, 1}, {1, 1}});
  }

  TEST_CASE("apply action swaps and retrieves") {
    GridState s = parse_map("2 1\nIO\n.#\n");
    GridState n = apply_action(s, {{0, 0}, {1, 0}});
    CHECK(n.at({0, 0}) == CellKind::kOtherItem);
    CHECK(n.at({1, 0}) == CellKind::kEscort);
    CHECK(n.retrieved() == 0);

    GridState r = parse_map("2 1\nIO 0,0\n.T\n");
    GridState done = apply_action(r, {{0, 0}, {1, 0}});
    CHECK(done.at({0, 0}) == CellKind::kEscort);
    CHECK(done.at({1, 0}) == CellKind::kEscort);
    CHECK(done.retrieved() == 1);
    CHECK(done.count(CellKind::kTargetItem) == 0);
  }

  TEST_CASE("illegal actions are rejected") {
    GridState s = parse_map("3 1\nIO\n.#.\n");
    auto code_of = [&](MoveAction a) {
      try {
        apply_action(s, a);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::kParse;
    };
    CHECK(code_of({{1, 0}, {0, 0}}) == ErrorCode::kIllegalAction);
    CHECK(code_of({{0, 0}, {2, 0}}) == ErrorCode::kIllegalAction);
    CHECK(code_of({{0, 0}, {-1, 0}}) == ErrorCode::kIllegalAction);
    CHECK(code_of({{2, 0}, {1, 0}}) != ErrorCode::kIllegalAction);
  }

  TEST_CASE("map format") {
    GridState one = GridState(1, 1, {}, CellKind::kEscort);
    CHECK(render_map(one) == "1 1\nIO\n.\n");

    GridState five = parse_map("5 5\nIO 0,4 2,4 4,4\n.#T##\n##.##\n#T###\n.####\n#T##.\n");
    CHECK(five.count(CellKind::kTargetItem) == 3);
    CHECK(five.count(CellKind::kEscort) == 4);
    CHECK(five.io_positions().size() == 3);

    GridState tally = parse_map("2 1 3\nIO 0,0\n.#\n");
    CHECK(tally.retrieved() == 3);
    CHECK(render_map(tally) == "2 1 3\nIO 0,0\n.#\n");
  }

  TEST_CASE("parse errors carry line and column") {
    auto message = [](const char* text) {
      try {
        parse_map(text);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kParse);
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message("2 2\nIO 0,0\n.x\n##\n").find("line 3, column 2") != std::string::npos);
    CHECK(message("2 2\nIO 0,0\n.\n##\n").find("line 3") != std::string::npos);
    CHECK(message("2 2\nIO 5,0\n..\n##\n").find("out of bounds") != std::string::npos);
    CHECK(message("2 2\nIO 0,0 0,0\n..\n##\n").find("duplicate") != std::string::npos);
    CHECK(message("").find("line 1") != std::string::npos);
    CHECK(message("2 2\nIO 0,0\n..\n").find("line 4") != std::string::npos);
  }

  TEST_CASE("round trip over random states") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      GridState s = random_state(rng, {7, 7, 8, 3, 4, false});
      CHECK(parse_map(render_map(s)) == s);
    }
  }

  TEST_CASE("conservation, swap locality and reversibility") {
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
      GridState s = random_state(rng, {6, 6, 5, 3, 4, true});
      auto actions = legal_actions(s);
      CHECK(actions == legal_actions(s));
      for (const MoveAction& a : actions) {
        REQUIRE(is_legal(s, a));
        GridState n = apply_action(s, a);
        CHECK(n.count(CellKind::kTargetItem) + n.retrieved() ==
              s.count(CellKind::kTargetItem) + s.retrieved());
        CHECK(n.count(CellKind::kOtherItem) == s.count(CellKind::kOtherItem));
        CHECK(n.count(CellKind::kEscort) - n.retrieved() ==
              s.count(CellKind::kEscort) - s.retrieved());
        CHECK(differing_cells(s, raw_swap(s, a)) == 2);
        if (n.retrieved() == s.retrieved()) {
          CHECK(apply_action(n, a.reversed()) == s);
        }
        ++checked;
      }
    }
    CHECK(checked > 500);
  }
}
