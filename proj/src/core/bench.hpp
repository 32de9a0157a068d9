#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "oracle.hpp"

namespace pbss {

struct GeneratorSpec {
  int width = 0;
  int height = 0;
  int n_escorts = 0;
  int n_targets = 0;
  std::vector<Position> io_positions;
  std::uint64_t rng_seed = 0;
};

// Random initial status: target items go to uniformly chosen non-IO cells,
// escorts to uniformly chosen remaining cells (IOs included), everything else
// is an ordinary item. The same spec always yields the same map. Throws
// Error(kInvalidArgument) when the counts do not fit or targets outnumber IOs.
GridState generate(const GeneratorSpec& spec);

enum class OracleStatus { kNotRun, kSolved, kExhausted, kUnsolvable };

struct BenchRow {
  std::string case_id;
  std::vector<int> heuristic_steps;  // one per solver seed
  bool solved = true;                // every seed finished within its cap
  OracleStatus oracle = OracleStatus::kNotRun;
  int oracle_steps = 0;              // valid when oracle == kSolved
  double wall_seconds = 0;           // heuristic time summed over seeds

  double mean_steps() const;
};

struct BenchReport {
  std::string title;
  std::vector<BenchRow> rows;

  double mean_steps() const;    // over rows' per-row means
  double mean_seconds() const;  // per row
  // Mean relative excess over rows with a solved oracle; nullopt if none.
  std::optional<double> gap_percent() const;
  int oracle_exhausted() const;
  bool all_solved() const;
};

struct BenchOptions {
  int seeds = 1;                // solver seeds 0..seeds-1 per case
  int max_steps = 0;            // 0: solver default
  bool run_oracle = false;
  OracleLimits oracle_limits;
};

// The 9x5 single-IO layout: IO (0,0), escorts on (0,0)..(k-1,0), the target
// item at `item`.
GridState fig17_instance(int escorts, Position item);

// One row per item cell of fig17_instance(escorts, .), row-major; case ids
// are "x,y".
BenchReport sweep_fig17(int escorts, const BenchOptions& options);

// Steps grid for a sweep report, top row y = height-1 first. Each cell is
// "h/o" (heuristic mean / optimum); "." marks escort cells.
std::string render_fig17_grid(int escorts, const BenchReport& report);

// The fifteen 9x9 parameter rows of the multi-item suite, generated with
// seeds base_seed, base_seed+1, ...
std::vector<GeneratorSpec> multi_item_specs(std::uint64_t base_seed = 0);
// Published averages for that suite, reported as context only.
inline constexpr double kReferenceMeanSteps = 39.0;
inline constexpr double kReferenceMeanSeconds = 6.56;

BenchReport bench_multi(const std::vector<GeneratorSpec>& specs, const BenchOptions& options);

std::string render_report_text(const BenchReport& report);
std::string render_report_json(const BenchReport& report);

}  // namespace pbss
