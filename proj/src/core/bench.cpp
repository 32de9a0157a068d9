#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "solver.hpp"

namespace pbss {

namespace {

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::string_view oracle_name(OracleStatus status) {
  switch (status) {
    case OracleStatus::kNotRun:
      return "not_run";
    case OracleStatus::kSolved:
      return "solved";
    case OracleStatus::kExhausted:
      return "exhausted";
    case OracleStatus::kUnsolvable:
      return "unsolvable";
  }
  return "not_run";
}

BenchRow run_case(std::string case_id, const GridState& state, const BenchOptions& options) {
  BenchRow row;
  row.case_id = std::move(case_id);
  for (int seed = 0; seed < std::max(options.seeds, 1); ++seed) {
    auto start = std::chrono::steady_clock::now();
    SolveTrace trace =
        solve(state, {static_cast<std::uint64_t>(seed), options.max_steps, 64});
    row.wall_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.heuristic_steps.push_back(trace.total_steps());
    row.solved = row.solved && trace.solved;
  }
  if (options.run_oracle) {
    OracleResult result = solve_optimal(state, options.oracle_limits);
    row.oracle = result.steps           ? OracleStatus::kSolved
                 : result.limit_reached ? OracleStatus::kExhausted
                                        : OracleStatus::kUnsolvable;
    row.oracle_steps = result.steps.value_or(0);
  }
  return row;
}

std::string format_fixed(double value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

}  // namespace

GridState generate(const GeneratorSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0)
    throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be positive");
  if (spec.n_escorts < 0 || spec.n_targets < 0)
    throw Error(ErrorCode::kInvalidArgument, "negative escort or target count");
  if (spec.n_targets > static_cast<int>(spec.io_positions.size()))
    throw Error(ErrorCode::kInvalidArgument, "target items outnumber IOs");
  GridState state(spec.width, spec.height, spec.io_positions);
  const int cells = state.cell_count();
  const int io_count = static_cast<int>(spec.io_positions.size());
  if (spec.n_targets > cells - io_count)
    throw Error(ErrorCode::kInvalidArgument, "not enough non-IO cells for the target items");
  if (spec.n_escorts + spec.n_targets > cells)
    throw Error(ErrorCode::kInvalidArgument, "escorts and targets exceed the cell count");

  std::mt19937_64 rng(spec.rng_seed);
  std::vector<int> free_cells;
  for (int i = 0; i < cells; ++i)
    if (!state.is_io(state.position(i))) free_cells.push_back(i);
  std::shuffle(free_cells.begin(), free_cells.end(), rng);
  free_cells.resize(static_cast<std::size_t>(spec.n_targets));
  for (int i : free_cells) state = state.with(state.position(i), CellKind::kTargetItem);

  std::vector<int> rest;
  for (int i = 0; i < cells; ++i)
    if (state.at_index(i) != CellKind::kTargetItem) rest.push_back(i);
  std::shuffle(rest.begin(), rest.end(), rng);
  rest.resize(static_cast<std::size_t>(spec.n_escorts));
  for (int i : rest) state = state.with(state.position(i), CellKind::kEscort);
  return state;
}

double BenchRow::mean_steps() const {
  std::vector<double> values(heuristic_steps.begin(), heuristic_steps.end());
  return mean(values);
}

double BenchReport::mean_steps() const {
  std::vector<double> values;
  for (const auto& row : rows) values.push_back(row.mean_steps());
  return mean(values);
}

double BenchReport::mean_seconds() const {
  std::vector<double> values;
  for (const auto& row : rows) values.push_back(row.wall_seconds);
  return mean(values);
}

std::optional<double> BenchReport::gap_percent() const {
  std::vector<StepPair> pairs;
  for (const auto& row : rows)
    if (row.oracle == OracleStatus::kSolved && row.oracle_steps > 0)
      pairs.push_back({row.mean_steps(), row.oracle_steps});
  if (pairs.empty()) return std::nullopt;
  return pbss::gap_percent(pairs);
}

int BenchReport::oracle_exhausted() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& row) {
    return row.oracle == OracleStatus::kExhausted;
  }));
}

bool BenchReport::all_solved() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& row) { return row.solved; });
}

GridState fig17_instance(int escorts, Position item) {
  constexpr int kWidth = 9, kHeight = 5;
  if (escorts < 1 || escorts >= kWidth)
    throw Error(ErrorCode::kInvalidArgument, "escort count must be in 1..8");
  GridState state(kWidth, kHeight, {{0, 0}});
  for (int x = 0; x < escorts; ++x) state = state.with({x, 0}, CellKind::kEscort);
  if (!state.in_bounds(item) || state.at(item) == CellKind::kEscort)
    throw Error(ErrorCode::kInvalidArgument, "item cell " + to_string(item) + " is not an item");
  return state.with(item, CellKind::kTargetItem);
}

BenchReport sweep_fig17(int escorts, const BenchOptions& options) {
  BenchReport report;
  report.title = "fig17 k=" + std::to_string(escorts);
  const GridState empty = fig17_instance(escorts, {escorts, 0}).with({escorts, 0}, CellKind::kOtherItem);
  for (int i = 0; i < empty.cell_count(); ++i) {
    Position p = empty.position(i);
    if (empty.at(p) == CellKind::kEscort) continue;
    report.rows.push_back(run_case(to_string(p), fig17_instance(escorts, p), options));
  }
  return report;
}

std::string render_fig17_grid(int escorts, const BenchReport& report) {
  const GridState empty = fig17_instance(escorts, {escorts, 0}).with({escorts, 0}, CellKind::kOtherItem);
  std::ostringstream os;
  std::size_t next = 0;
  std::vector<std::string> cells(static_cast<std::size_t>(empty.cell_count()), ".");
  for (int i = 0; i < empty.cell_count() && next < report.rows.size(); ++i) {
    if (empty.at_index(i) == CellKind::kEscort) continue;
    const BenchRow& row = report.rows[next++];
    std::string cell = format_fixed(row.mean_steps(), 1);
    if (cell.size() > 2 && cell.substr(cell.size() - 2) == ".0") cell.resize(cell.size() - 2);
    if (row.oracle == OracleStatus::kSolved) cell += "/" + std::to_string(row.oracle_steps);
    if (row.oracle == OracleStatus::kExhausted) cell += "/?";
    cells[static_cast<std::size_t>(i)] = cell;
  }
  for (int y = empty.height() - 1; y >= 0; --y) {
    for (int x = 0; x < empty.width(); ++x)
      os << (x ? " " : "") << std::setw(9) << cells[static_cast<std::size_t>(empty.index({x, y}))];
    os << '\n';
  }
  return os.str();
}

std::vector<GeneratorSpec> multi_item_specs(std::uint64_t base_seed) {
  const std::vector<Position> corner3{{0, 0}, {0, 8}, {8, 8}};
  const std::vector<Position> mixed3{{4, 0}, {8, 8}, {0, 8}};
  const std::vector<Position> far3{{0, 8}, {8, 8}, {8, 0}};
  const std::vector<Position> corner4{{0, 0}, {0, 8}, {8, 8}, {8, 0}};
  const std::vector<Position> sides4{{4, 0}, {8, 4}, {4, 8}, {0, 4}};
  const std::vector<Position> lower4{{0, 4}, {0, 8}, {8, 8}, {8, 4}};
  const std::vector<Position> square4{{0, 0}, {8, 0}, {8, 8}, {0, 8}};
  struct Row {
    int escorts;
    int targets;
    const std::vector<Position>* ios;
  };
  const Row rows[] = {{9, 3, &corner3},   {9, 3, &corner3},   {9, 3, &mixed3},    {9, 3, &mixed3},
                      {9, 3, &far3},      {15, 4, &corner4},  {15, 4, &corner4},  {15, 4, &sides4},
                      {15, 4, &sides4},   {15, 4, &lower4},   {20, 4, &square4},  {20, 4, &square4},
                      {20, 4, &sides4},   {20, 4, &sides4},   {20, 4, &sides4}};
  std::vector<GeneratorSpec> specs;
  std::uint64_t seed = base_seed;
  for (const Row& row : rows) specs.push_back({9, 9, row.escorts, row.targets, *row.ios, seed++});
  return specs;
}

BenchReport bench_multi(const std::vector<GeneratorSpec>& specs, const BenchOptions& options) {
  BenchReport report;
  report.title = "multi-item (reference mean " + format_fixed(kReferenceMeanSteps, 0) +
                 " steps, " + format_fixed(kReferenceMeanSeconds, 2) + " s)";
  for (std::size_t i = 0; i < specs.size(); ++i)
    report.rows.push_back(run_case("9-" + std::to_string(i + 1), generate(specs[i]), options));
  return report;
}

std::string render_report_text(const BenchReport& report) {
  std::ostringstream os;
  os << "# " << report.title << '\n';
  os << std::left << std::setw(10) << "case" << std::right << std::setw(10) << "steps"
     << std::setw(10) << "oracle" << std::setw(8) << "solved" << std::setw(12) << "seconds"
     << '\n';
  for (const auto& row : report.rows) {
    std::string oracle = row.oracle == OracleStatus::kSolved ? std::to_string(row.oracle_steps)
                         : row.oracle == OracleStatus::kNotRun
                             ? "-"
                             : std::string(oracle_name(row.oracle));
    os << std::left << std::setw(10) << row.case_id << std::right << std::setw(10)
       << format_fixed(row.mean_steps(), 2) << std::setw(10) << oracle << std::setw(8)
       << (row.solved ? "yes" : "no") << std::setw(12) << format_fixed(row.wall_seconds, 4)
       << '\n';
  }
  os << "mean_steps=" << format_fixed(report.mean_steps(), 2)
     << " mean_seconds=" << format_fixed(report.mean_seconds(), 4);
  if (auto gap = report.gap_percent()) os << " gap=" << format_fixed(*gap, 4) << '%';
  if (int n = report.oracle_exhausted()) os << " oracle_exhausted=" << n;
  os << " all_solved=" << (report.all_solved() ? "yes" : "no") << '\n';
  return os.str();
}

std::string render_report_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r{{"case", row.case_id},
                     {"heuristic_steps", row.heuristic_steps},
                     {"mean_steps", row.mean_steps()},
                     {"solved", row.solved},
                     {"oracle", oracle_name(row.oracle)},
                     {"wall_seconds", row.wall_seconds}};
    if (row.oracle == OracleStatus::kSolved) r["oracle_steps"] = row.oracle_steps;
    rows.push_back(std::move(r));
  }
  nlohmann::json doc{{"title", report.title},
                     {"rows", rows},
                     {"mean_steps", report.mean_steps()},
                     {"mean_seconds", report.mean_seconds()},
                     {"oracle_exhausted", report.oracle_exhausted()},
                     {"all_solved", report.all_solved()}};
  auto gap = report.gap_percent();
  doc["gap_percent"] = gap ? nlohmann::json(*gap) : nlohmann::json(nullptr);
  return doc.dump(2) + "\n";
}

}  // namespace pbss
