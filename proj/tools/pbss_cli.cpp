#include <pbss/pbss.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

enum Exit {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitInfeasible = 3,
  kExitExhausted = 4,
  kExitReplay = 5,
  kExitInvalid = 6,
  kExitInternal = 7,
};

struct Failure {
  int code;
};

int exit_code(pbss_status status) {
  switch (status) {
    case PBSS_OK:
      return kExitOk;
    case PBSS_ERR_PARSE:
      return kExitParse;
    case PBSS_ERR_INFEASIBLE:
      return kExitInfeasible;
    case PBSS_ERR_NO_ACTION:
    case PBSS_ERR_EXHAUSTED:
      return kExitExhausted;
    case PBSS_ERR_REPLAY_MISMATCH:
      return kExitReplay;
    case PBSS_ERR_INVALID_ARGUMENT:
    case PBSS_ERR_ILLEGAL_ACTION:
    case PBSS_ERR_OUT_OF_RANGE:
      return kExitInvalid;
    case PBSS_ERR_IO:
      return kExitUsage;
    case PBSS_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void check(pbss_status status, const std::string& context) {
  if (status == PBSS_OK) return;
  std::cerr << "pbss: " << context << ": " << pbss_status_name(status) << ": "
            << pbss_last_error_message() << '\n';
  throw Failure{exit_code(status)};
}

struct StateDeleter {
  void operator()(pbss_state* p) const { pbss_state_free(p); }
};
struct TraceDeleter {
  void operator()(pbss_trace* p) const { pbss_trace_free(p); }
};
struct ReportDeleter {
  void operator()(pbss_report* p) const { pbss_report_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { pbss_string_free(p); }
};
using State = std::unique_ptr<pbss_state, StateDeleter>;
using Trace = std::unique_ptr<pbss_trace, TraceDeleter>;
using Report = std::unique_ptr<pbss_report, ReportDeleter>;

std::string take(char* text) {
  std::unique_ptr<char, StringDeleter> owned(text);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "pbss: cannot read " << path << '\n';
    throw Failure{kExitUsage};
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "pbss: cannot write " << out_path << '\n';
    throw Failure{kExitUsage};
  }
}

State load_map(const std::string& path) {
  pbss_state* raw = nullptr;
  check(pbss_state_parse(read_file(path).c_str(), &raw), path);
  return State(raw);
}

pbss_format to_format(const std::string& name) {
  return name == "structured" ? PBSS_FORMAT_JSON : PBSS_FORMAT_TEXT;
}

std::vector<int> parse_position(const std::string& text) {
  int x = 0, y = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> x >> comma >> y) || comma != ',' || !in.eof()) {
    std::cerr << "pbss: bad position '" << text << "', expected x,y\n";
    throw Failure{kExitUsage};
  }
  return {x, y};
}

struct Common {
  std::uint64_t seed = 0;
  int max_steps = 0;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* cmd, Common& common, const std::string& seed_help) {
  cmd->add_option("--seed", common.seed, seed_help);
  cmd->add_option("--max-steps", common.max_steps, "Step cap per solve, 0 for 20*W*H")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--out", common.out, "Write the main output to this file");
}

int cmd_solve(const std::string& map_path, const Common& common, bool verify) {
  State state = load_map(map_path);
  pbss_solve_options options{common.seed, common.max_steps, 0};
  pbss_trace* raw = nullptr;
  auto start = std::chrono::steady_clock::now();
  check(pbss_solve(state.get(), &options, &raw), "solve");
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Trace trace(raw);

  char* text = nullptr;
  check(pbss_trace_render(trace.get(), to_format(common.format), &text), "render trace");
  emit(take(text), common.out);

  const bool solved = pbss_trace_solved(trace.get()) != 0;
  if (verify) {
    pbss_state* final_raw = nullptr;
    check(pbss_replay(trace.get(), &final_raw), "verify");
    State final_state(final_raw);
    if ((pbss_state_target_count(final_state.get()) == 0) != solved) {
      std::cerr << "pbss: verify: replayed final state disagrees with the solver\n";
      return kExitReplay;
    }
  }
  std::ostream& summary = common.out.empty() ? std::cerr : std::cout;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", seconds);
  summary << "steps=" << pbss_trace_steps(trace.get()) << " solved=" << (solved ? "yes" : "no")
          << " seconds=" << buffer << (verify ? " verified=yes" : "") << '\n';
  return solved ? kExitOk : kExitExhausted;
}

int cmd_generate(int width, int height, int escorts, int targets,
                 const std::vector<std::string>& ios, const Common& common) {
  std::vector<int> io_xy;
  for (const std::string& io : ios)
    for (int v : parse_position(io)) io_xy.push_back(v);
  pbss_generator_spec spec{width, height, escorts, targets, io_xy.data(), ios.size(), common.seed};
  pbss_state* raw = nullptr;
  check(pbss_generate(&spec, &raw), "generate");
  State state(raw);
  char* text = nullptr;
  check(pbss_state_render(state.get(), &text), "render map");
  emit(take(text), common.out);
  return kExitOk;
}

pbss_bench_options bench_options(int seeds, const Common& common, bool oracle,
                                 std::uint64_t max_expanded) {
  return {seeds, common.max_steps, oracle ? 1 : 0, max_expanded};
}

std::string join_json(const std::vector<std::string>& docs) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::string doc = docs[i];
    while (!doc.empty() && doc.back() == '\n') doc.pop_back();
    out += doc + (i + 1 < docs.size() ? ",\n" : "\n");
  }
  return out + "]\n";
}

int cmd_sweep(const std::vector<int>& counts, int seeds, bool oracle, std::uint64_t max_expanded,
              const Common& common) {
  pbss_bench_options options = bench_options(seeds, common, oracle, max_expanded);
  std::string text;
  std::vector<std::string> docs;
  bool all_solved = true;
  for (int k : counts) {
    pbss_report* raw = nullptr;
    check(pbss_sweep_fig17(k, &options, &raw), "sweep k=" + std::to_string(k));
    Report report(raw);
    char* rendered = nullptr;
    check(pbss_report_render(report.get(), to_format(common.format), &rendered), "render report");
    if (to_format(common.format) == PBSS_FORMAT_JSON) {
      docs.push_back(take(rendered));
    } else {
      char* grid = nullptr;
      check(pbss_report_grid(report.get(), &grid), "render grid");
      text += take(rendered) + take(grid) + "\n";
    }
    all_solved = all_solved && pbss_report_all_solved(report.get());
  }
  emit(docs.empty() ? text : join_json(docs), common.out);
  return all_solved ? kExitOk : kExitExhausted;
}

int cmd_bench(int seeds, bool oracle, std::uint64_t max_expanded, const Common& common) {
  pbss_bench_options options = bench_options(seeds, common, oracle, max_expanded);
  pbss_report* raw = nullptr;
  check(pbss_bench_multi(common.seed, &options, &raw), "bench");
  Report report(raw);
  char* rendered = nullptr;
  check(pbss_report_render(report.get(), to_format(common.format), &rendered), "render report");
  emit(take(rendered), common.out);
  if (!pbss_report_all_solved(report.get())) {
    std::cerr << "pbss: some cases hit the step cap\n";
    return kExitExhausted;
  }
  return kExitOk;
}

int cmd_replay(const std::string& trace_path, const std::string& map_path, const Common& common) {
  State initial;
  if (!map_path.empty()) initial = load_map(map_path);
  pbss_trace* raw = nullptr;
  check(pbss_trace_parse(read_file(trace_path).c_str(), initial.get(), &raw), trace_path);
  Trace trace(raw);
  char* frames = nullptr;
  check(pbss_replay_frames(trace.get(), &frames), "replay");
  emit(take(frames), common.out);
  return kExitOk;
}

int cmd_evaluate(const std::string& map_path) {
  State state = load_map(map_path);
  pbss_indexes ix{};
  check(pbss_evaluate(state.get(), &ix), "evaluate");
  std::cout << "d_min=" << ix.d_min << " h=" << ix.assignments << " et_min=" << ix.et_min
            << " min_d=" << (ix.min_d == PBSS_UNREACHABLE ? std::string("inf") : std::to_string(ix.min_d))
            << '\n';
  return kExitOk;
}

int cmd_oracle(const std::string& map_path, std::uint64_t max_expanded, bool bfs) {
  State state = load_map(map_path);
  pbss_oracle_options options{max_expanded, 0, bfs ? 1 : 0};
  pbss_oracle_result result{};
  pbss_status status = pbss_oracle_solve(state.get(), &options, &result);
  if (status == PBSS_ERR_EXHAUSTED) {
    std::cout << "optimal=? expanded=" << result.expanded << '\n';
    return kExitExhausted;
  }
  check(status, "oracle");
  std::cout << "optimal="
            << (result.steps < 0 ? std::string("unsolvable") : std::to_string(result.steps))
            << " expanded=" << result.expanded << '\n';
  return result.steps < 0 ? kExitInfeasible : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrieval routing for puzzle-based storage grids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pbss 1.0");

  Common common;
  bool verify = false;
  std::string map_path, trace_path;
  int width = 0, height = 0, escorts = 0, targets = 0, seeds = 3;
  std::vector<std::string> ios;
  std::vector<int> counts{1, 2, 3, 4, 5, 6};
  bool no_oracle = false, with_oracle = false, bfs = false;
  std::uint64_t max_expanded = 0;

  auto* solve = app.add_subcommand("solve", "Run the heuristic on a map and print its trace");
  solve->add_option("map", map_path, "Map file")->required();
  add_common(solve, common, "Tie-break seed");
  solve->add_flag("--verify", verify, "Replay the trace and check the verdict");

  auto* generate = app.add_subcommand("generate", "Write a random map");
  generate->add_option("--width", width, "Columns")->required();
  generate->add_option("--height", height, "Rows")->required();
  generate->add_option("--escorts", escorts, "Escort count")->required();
  generate->add_option("--targets", targets, "Target item count")->required();
  generate->add_option("--io", ios, "IO cell x,y (repeatable)")->required();
  add_common(generate, common, "Generator seed");

  auto* sweep = app.add_subcommand("sweep-fig17", "Single-item sweep over the 9x5 line layout");
  sweep->add_option("--escorts", counts, "Escort counts")->delimiter(',')->check(CLI::Range(1, 8));
  sweep->add_option("--seeds", seeds, "Heuristic seeds per cell")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-oracle", no_oracle, "Skip the exact search");
  sweep->add_option("--max-expanded", max_expanded, "Oracle expansion limit");
  add_common(sweep, common, "Unused");

  auto* bench = app.add_subcommand("bench-multi", "Fifteen-case 9x9 multi-item suite");
  bench->add_option("--seeds", seeds, "Heuristic seeds per case")->check(CLI::PositiveNumber);
  bench->add_flag("--oracle", with_oracle, "Also attempt the exact search");
  bench->add_option("--max-expanded", max_expanded, "Oracle expansion limit");
  add_common(bench, common, "Base generator seed");

  auto* replay = app.add_subcommand("replay", "Print a trace as board frames");
  replay->add_option("trace", trace_path, "Trace file")->required();
  replay->add_option("map", map_path, "Initial map (text traces only)");
  add_common(replay, common, "Unused");

  auto* evaluate = app.add_subcommand("evaluate", "Print the status indexes of a map");
  evaluate->add_option("map", map_path, "Map file")->required();

  auto* oracle = app.add_subcommand("oracle", "Exact minimum move count for a map");
  oracle->add_option("map", map_path, "Map file")->required();
  oracle->add_option("--max-expanded", max_expanded, "Expansion limit");
  oracle->add_flag("--bfs", bfs, "Plain breadth-first search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(map_path, common, verify);
    if (generate->parsed()) return cmd_generate(width, height, escorts, targets, ios, common);
    if (sweep->parsed()) return cmd_sweep(counts, seeds, !no_oracle, max_expanded, common);
    if (bench->parsed()) return cmd_bench(seeds, with_oracle, max_expanded, common);
    if (replay->parsed()) return cmd_replay(trace_path, map_path, common);
    if (evaluate->parsed()) return cmd_evaluate(map_path);
    if (oracle->parsed()) return cmd_oracle(map_path, max_expanded, bfs);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
