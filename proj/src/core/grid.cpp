#include "grid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "error.hpp"

namespace pbss {

namespace {

constexpr Position kDirections[] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};

bool is_item(CellKind kind) { return kind != CellKind::kEscort; }

[[noreturn]] void parse_fail(int line, int column, const std::string& cause) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << cause;
  throw Error(ErrorCode::kParse, os.str());
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start)
      tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

int manhattan(Position a, Position b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

std::string to_string(Position p) {
  return std::to_string(p.x) + "," + std::to_string(p.y);
}

GridState::GridState(int width, int height, std::vector<Position> io_positions,
                     CellKind fill, int retrieved)
    : width_(width), height_(height), ios_(std::move(io_positions)), retrieved_(retrieved) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be positive");
  if (retrieved < 0) throw Error(ErrorCode::kInvalidArgument, "negative retrieved count");
  for (std::size_t i = 0; i < ios_.size(); ++i) {
    if (!in_bounds(ios_[i]))
      throw Error(ErrorCode::kInvalidArgument, "IO " + to_string(ios_[i]) + " out of bounds");
    for (std::size_t j = 0; j < i; ++j)
      if (ios_[i] == ios_[j])
        throw Error(ErrorCode::kInvalidArgument, "duplicate IO " + to_string(ios_[i]));
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

bool GridState::is_io(Position p) const {
  return std::find(ios_.begin(), ios_.end(), p) != ios_.end();
}

GridState GridState::with(Position p, CellKind kind) const {
  if (!in_bounds(p))
    throw Error(ErrorCode::kOutOfRange, "cell " + to_string(p) + " out of bounds");
  GridState copy = *this;
  copy.cells_[static_cast<std::size_t>(index(p))] = kind;
  return copy;
}

std::vector<Position> GridState::positions_of(CellKind kind) const {
  std::vector<Position> out;
  for (int i = 0; i < cell_count(); ++i)
    if (cells_[static_cast<std::size_t>(i)] == kind) out.push_back(position(i));
  return out;
}

int GridState::count(CellKind kind) const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), kind));
}

std::string GridState::canonical_key() const {
  std::string key;
  key.reserve(cells_.size() + 8);
  for (CellKind kind : cells_) key.push_back(glyph(kind));
  key.push_back('|');
  key += std::to_string(retrieved_);
  return key;
}

std::vector<MoveAction> legal_actions(const GridState& state) {
  std::vector<MoveAction> actions;
  for (int i = 0; i < state.cell_count(); ++i) {
    if (state.at_index(i) != CellKind::kEscort) continue;
    Position from = state.position(i);
    for (Position d : kDirections) {
      Position to{from.x + d.x, from.y + d.y};
      if (state.in_bounds(to) && is_item(state.at(to))) actions.push_back({from, to});
    }
  }
  return actions;
}

bool is_legal(const GridState& state, const MoveAction& action) {
  return state.in_bounds(action.escort_from) && state.in_bounds(action.escort_to) &&
         manhattan(action.escort_from, action.escort_to) == 1 &&
         state.at(action.escort_from) == CellKind::kEscort &&
         is_item(state.at(action.escort_to));
}

GridState sweep_retrievals(GridState state) {
  for (Position io : state.ios_) {
    auto& cell = state.cells_[static_cast<std::size_t>(state.index(io))];
    if (cell == CellKind::kTargetItem) {
      cell = CellKind::kEscort;
      ++state.retrieved_;
    }
  }
  return state;
}

GridState apply_action(const GridState& state, const MoveAction& action) {
  if (!is_legal(state, action))
    throw Error(ErrorCode::kIllegalAction, "illegal move " + to_string(action.escort_from) +
                                               " -> " + to_string(action.escort_to));
  GridState next = state;
  auto from = static_cast<std::size_t>(state.index(action.escort_from));
  auto to = static_cast<std::size_t>(state.index(action.escort_to));
  std::swap(next.cells_[from], next.cells_[to]);
  return sweep_retrievals(std::move(next));
}

char glyph(CellKind kind) {
  switch (kind) {
    case CellKind::kEscort:
      return '.';
    case CellKind::kOtherItem:
      return '#';
    case CellKind::kTargetItem:
      return 'T';
  }
  return '?';
}

GridState parse_map(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && split_tokens(lines.back()).empty()) lines.pop_back();

  if (lines.empty()) parse_fail(1, 1, "empty input");
  auto header = split_tokens(lines[0]);
  if (header.size() < 2 || header.size() > 3)
    parse_fail(1, 1, "expected 'W H' or 'W H retrieved'");
  int width = 0, height = 0, retrieved = 0;
  if (!parse_int(header[0].text, width) || width <= 0)
    parse_fail(1, header[0].column, "bad width '" + std::string(header[0].text) + "'");
  if (!parse_int(header[1].text, height) || height <= 0)
    parse_fail(1, header[1].column, "bad height '" + std::string(header[1].text) + "'");
  if (header.size() == 3 && (!parse_int(header[2].text, retrieved) || retrieved < 0))
    parse_fail(1, header[2].column, "bad retrieved count '" + std::string(header[2].text) + "'");

  if (lines.size() < 2) parse_fail(2, 1, "missing IO line");
  auto io_tokens = split_tokens(lines[1]);
  if (io_tokens.empty() || io_tokens[0].text != "IO") parse_fail(2, 1, "expected 'IO'");
  std::vector<Position> ios;
  for (std::size_t i = 1; i < io_tokens.size(); ++i) {
    const Token& tok = io_tokens[i];
    auto comma = tok.text.find(',');
    Position p;
    if (comma == std::string_view::npos || !parse_int(tok.text.substr(0, comma), p.x) ||
        !parse_int(tok.text.substr(comma + 1), p.y))
      parse_fail(2, tok.column, "bad IO coordinate '" + std::string(tok.text) + "'");
    if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height)
      parse_fail(2, tok.column, "IO " + to_string(p) + " out of bounds");
    if (std::find(ios.begin(), ios.end(), p) != ios.end())
      parse_fail(2, tok.column, "duplicate IO " + to_string(p));
    ios.push_back(p);
  }

  if (static_cast<int>(lines.size()) - 2 < height)
    parse_fail(static_cast<int>(lines.size()) + 1, 1,
               "expected " + std::to_string(height) + " grid rows");
  if (static_cast<int>(lines.size()) - 2 > height)
    parse_fail(height + 3, 1, "trailing content after grid rows");

  GridState state(width, height, std::move(ios), CellKind::kOtherItem, retrieved);
  for (int y = 0; y < height; ++y) {
    std::string_view row = lines[static_cast<std::size_t>(y) + 2];
    int line_no = y + 3;
    if (static_cast<int>(row.size()) != width)
      parse_fail(line_no, std::min<int>(static_cast<int>(row.size()), width) + 1,
                 "ragged row: expected " + std::to_string(width) + " glyphs, got " +
                     std::to_string(row.size()));
    for (int x = 0; x < width; ++x) {
      CellKind kind;
      switch (row[static_cast<std::size_t>(x)]) {
        case '.':
          kind = CellKind::kEscort;
          break;
        case '#':
          kind = CellKind::kOtherItem;
          break;
        case 'T':
          kind = CellKind::kTargetItem;
          break;
        default:
          parse_fail(line_no, x + 1,
                     std::string("bad glyph '") + row[static_cast<std::size_t>(x)] + "'");
      }
      state = state.with({x, y}, kind);
    }
  }
  return state;
}

std::string render_map(const GridState& state) {
  std::ostringstream os;
  os << state.width() << ' ' << state.height();
  if (state.retrieved() > 0) os << ' ' << state.retrieved();
  os << "\nIO";
  for (Position p : state.io_positions()) os << ' ' << to_string(p);
  os << '\n';
  for (int y = 0; y < state.height(); ++y) {
    for (int x = 0; x < state.width(); ++x) os << glyph(state.at({x, y}));
    os << '\n';
  }
  return os.str();
}

}  // namespace pbss
