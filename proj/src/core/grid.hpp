#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pbss {

// Grid coordinate. x is the column, y the row; y grows downward in the
// rendered map.
struct Position {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

int manhattan(Position a, Position b);

enum class CellKind : std::uint8_t { kEscort, kOtherItem, kTargetItem };

// One escort move: the escort at escort_from swaps with the item at the
// 4-adjacent escort_to.
struct MoveAction {
  Position escort_from;
  Position escort_to;

  friend bool operator==(const MoveAction&, const MoveAction&) = default;

  MoveAction reversed() const { return {escort_to, escort_from}; }
};

// Immutable snapshot of the warehouse: cell contents, IO ports and the number
// of target items already delivered.
class GridState {
 public:
  // All cells start as `fill`. Throws Error(kInvalidArgument) for non-positive
  // dimensions or out-of-bounds/duplicate IOs.
  GridState(int width, int height, std::vector<Position> io_positions,
            CellKind fill = CellKind::kOtherItem, int retrieved = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }
  int retrieved() const { return retrieved_; }
  const std::vector<Position>& io_positions() const { return ios_; }

  bool in_bounds(Position p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
  }
  bool is_io(Position p) const;
  CellKind at(Position p) const { return cells_[index(p)]; }
  CellKind at_index(int i) const { return cells_[static_cast<std::size_t>(i)]; }
  int index(Position p) const { return p.y * width_ + p.x; }
  Position position(int i) const { return {i % width_, i / width_}; }

  // Copy with one cell replaced.
  GridState with(Position p, CellKind kind) const;

  // Row-major list of cells holding `kind`.
  std::vector<Position> positions_of(CellKind kind) const;
  int count(CellKind kind) const;
  std::vector<Position> targets() const { return positions_of(CellKind::kTargetItem); }
  std::vector<Position> escorts() const { return positions_of(CellKind::kEscort); }

  // Row-major glyph string followed by '|' and the retrieved tally. Two states
  // over the same grid are equal iff their keys are equal.
  std::string canonical_key() const;

  friend bool operator==(const GridState&, const GridState&) = default;

 private:
  friend GridState apply_action(const GridState&, const MoveAction&);
  friend GridState sweep_retrievals(GridState);

  int width_;
  int height_;
  std::vector<CellKind> cells_;
  std::vector<Position> ios_;
  int retrieved_;
};

// Every escort-item swap, row-major by escort, then Up, Down, Left, Right.
std::vector<MoveAction> legal_actions(const GridState& state);

bool is_legal(const GridState& state, const MoveAction& action);

// Swaps the two cells, then retrieves every target item standing on an IO.
// Throws Error(kIllegalAction) if the action is not legal in `state`.
GridState apply_action(const GridState& state, const MoveAction& action);

// Retrieval sweep on its own; used to normalise initial states that already
// have a target item parked on an IO.
GridState sweep_retrievals(GridState state);

char glyph(CellKind kind);

// Map text format:
//   W H [retrieved]
//   IO x1,y1 x2,y2 ...
//   H rows of W glyphs: '.' escort, '#' other item, 'T' target item
// Throws Error(kParse) with "line L, column C: cause".
GridState parse_map(std::string_view text);
std::string render_map(const GridState& state);

std::string to_string(Position p);

}  // namespace pbss
