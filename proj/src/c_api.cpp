#include <pbss/pbss.h>

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "assignment.hpp"
#include "bench.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "trace_io.hpp"

struct pbss_state {
  pbss::GridState value;
};

struct pbss_trace {
  pbss::SolveTrace value;
};

struct pbss_report {
  pbss::BenchReport value;
  std::optional<int> fig17_escorts;
};

namespace {

thread_local std::string g_last_error;

pbss_status status_of(pbss::ErrorCode code) {
  switch (code) {
    case pbss::ErrorCode::kParse:
      return PBSS_ERR_PARSE;
    case pbss::ErrorCode::kIllegalAction:
      return PBSS_ERR_ILLEGAL_ACTION;
    case pbss::ErrorCode::kInfeasible:
      return PBSS_ERR_INFEASIBLE;
    case pbss::ErrorCode::kOutOfRange:
      return PBSS_ERR_OUT_OF_RANGE;
    case pbss::ErrorCode::kNoLegalAction:
      return PBSS_ERR_NO_ACTION;
    case pbss::ErrorCode::kInvalidArgument:
      return PBSS_ERR_INVALID_ARGUMENT;
    case pbss::ErrorCode::kReplayMismatch:
      return PBSS_ERR_REPLAY_MISMATCH;
  }
  return PBSS_ERR_INTERNAL;
}

pbss_status fail(pbss_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
pbss_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const pbss::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PBSS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PBSS_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pbss_status null_argument() { return fail(PBSS_ERR_INVALID_ARGUMENT, "null argument"); }

int external_value(int value) { return value == pbss::kUnreachable ? PBSS_UNREACHABLE : value; }

pbss::BenchOptions bench_options(const pbss_bench_options* options) {
  pbss::BenchOptions out;
  if (!options) return out;
  out.seeds = options->seeds > 0 ? options->seeds : 1;
  out.max_steps = options->max_steps;
  out.run_oracle = options->run_oracle != 0;
  if (options->max_expanded > 0) out.oracle_limits.max_expanded_states = options->max_expanded;
  return out;
}

}  // namespace

extern "C" {

const char* pbss_last_error_message(void) { return g_last_error.c_str(); }

const char* pbss_status_name(pbss_status status) {
  switch (status) {
    case PBSS_OK:
      return "ok";
    case PBSS_ERR_PARSE:
      return "parse error";
    case PBSS_ERR_INFEASIBLE:
      return "infeasible";
    case PBSS_ERR_ILLEGAL_ACTION:
      return "illegal action";
    case PBSS_ERR_NO_ACTION:
      return "no legal action";
    case PBSS_ERR_EXHAUSTED:
      return "search limit exhausted";
    case PBSS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PBSS_ERR_REPLAY_MISMATCH:
      return "replay mismatch";
    case PBSS_ERR_OUT_OF_RANGE:
      return "out of range";
    case PBSS_ERR_IO:
      return "i/o error";
    case PBSS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void pbss_string_free(char* text) { delete[] text; }

pbss_status pbss_state_parse(const char* text, pbss_state** out) {
  if (!text || !out) return null_argument();
  return guarded([&] {
    *out = new pbss_state{pbss::parse_map(text)};
    return PBSS_OK;
  });
}

pbss_status pbss_state_render(const pbss_state* state, char** out) {
  if (!state || !out) return null_argument();
  return guarded([&] {
    *out = copy_string(pbss::render_map(state->value));
    return PBSS_OK;
  });
}

void pbss_state_free(pbss_state* state) { delete state; }

int pbss_state_width(const pbss_state* state) { return state ? state->value.width() : 0; }
int pbss_state_height(const pbss_state* state) { return state ? state->value.height() : 0; }
int pbss_state_retrieved(const pbss_state* state) { return state ? state->value.retrieved() : 0; }

int pbss_state_target_count(const pbss_state* state) {
  return state ? state->value.count(pbss::CellKind::kTargetItem) : 0;
}

int pbss_state_escort_count(const pbss_state* state) {
  return state ? state->value.count(pbss::CellKind::kEscort) : 0;
}

char pbss_state_cell(const pbss_state* state, int x, int y) {
  if (!state || !state->value.in_bounds({x, y})) return 0;
  return pbss::glyph(state->value.at({x, y}));
}

pbss_status pbss_state_apply(const pbss_state* state, int fx, int fy, int tx, int ty,
                             pbss_state** out) {
  if (!state || !out) return null_argument();
  return guarded([&] {
    *out = new pbss_state{pbss::apply_action(state->value, {{fx, fy}, {tx, ty}})};
    return PBSS_OK;
  });
}

pbss_status pbss_evaluate(const pbss_state* state, pbss_indexes* out) {
  if (!state || !out) return null_argument();
  return guarded([&] {
    pbss::StatusIndexes indexes = pbss::evaluate(state->value);
    out->d_min = indexes.d_min;
    out->et_min = indexes.et_min;
    out->min_d = external_value(indexes.min_d);
    out->assignments = pbss::optimal_assignments(state->value).h();
    return PBSS_OK;
  });
}

pbss_status pbss_solve(const pbss_state* state, const pbss_solve_options* options,
                       pbss_trace** out) {
  if (!state || !out) return null_argument();
  return guarded([&] {
    pbss::SolverConfig config;
    if (options) {
      if (options->max_steps < 0 || options->cycle_memory < 0)
        return fail(PBSS_ERR_INVALID_ARGUMENT, "negative solver option");
      config.rng_seed = options->seed;
      config.max_steps = options->max_steps;
      if (options->cycle_memory > 0) config.cycle_memory = options->cycle_memory;
    }
    *out = new pbss_trace{pbss::solve(state->value, config)};
    return PBSS_OK;
  });
}

int pbss_trace_steps(const pbss_trace* trace) { return trace ? trace->value.total_steps() : 0; }
int pbss_trace_solved(const pbss_trace* trace) { return trace && trace->value.solved ? 1 : 0; }

pbss_status pbss_trace_record(const pbss_trace* trace, int index, pbss_record* out) {
  if (!trace || !out) return null_argument();
  if (index < 0 || index >= trace->value.total_steps())
    return fail(PBSS_ERR_OUT_OF_RANGE, "record index " + std::to_string(index) + " out of range");
  const pbss::DecisionRecord& r = trace->value.records[static_cast<std::size_t>(index)];
  out->step = r.step;
  out->from_x = r.move.escort_from.x;
  out->from_y = r.move.escort_from.y;
  out->to_x = r.move.escort_to.x;
  out->to_y = r.move.escort_to.y;
  out->reason = static_cast<pbss_reason>(r.reason);
  out->value_before = external_value(r.value_before);
  out->value_after = external_value(r.value_after);
  out->reward = r.reward;
  return PBSS_OK;
}

pbss_status pbss_trace_initial(const pbss_trace* trace, pbss_state** out) {
  if (!trace || !out) return null_argument();
  return guarded([&] {
    *out = new pbss_state{trace->value.initial};
    return PBSS_OK;
  });
}

pbss_status pbss_trace_render(const pbss_trace* trace, pbss_format format, char** out) {
  if (!trace || !out) return null_argument();
  return guarded([&] {
    *out = copy_string(format == PBSS_FORMAT_JSON ? pbss::render_trace_json(trace->value)
                                                  : pbss::render_trace_text(trace->value));
    return PBSS_OK;
  });
}

pbss_status pbss_trace_parse(const char* text, const pbss_state* initial, pbss_trace** out) {
  if (!text || !out) return null_argument();
  return guarded([&] {
    std::string_view view(text);
    auto first = view.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && view[first] == '{') {
      *out = new pbss_trace{pbss::parse_trace_json(view)};
      return PBSS_OK;
    }
    if (!initial) return fail(PBSS_ERR_INVALID_ARGUMENT, "text traces need the initial map");
    *out = new pbss_trace{pbss::parse_trace(view, initial->value)};
    return PBSS_OK;
  });
}

void pbss_trace_free(pbss_trace* trace) { delete trace; }

pbss_status pbss_replay(const pbss_trace* trace, pbss_state** final_state) {
  if (!trace || !final_state) return null_argument();
  return guarded([&] {
    *final_state = new pbss_state{pbss::replay(trace->value)};
    return PBSS_OK;
  });
}

pbss_status pbss_replay_frames(const pbss_trace* trace, char** out) {
  if (!trace || !out) return null_argument();
  return guarded([&] {
    *out = copy_string(pbss::render_replay(trace->value));
    return PBSS_OK;
  });
}

pbss_status pbss_oracle_solve(const pbss_state* state, const pbss_oracle_options* options,
                              pbss_oracle_result* out) {
  if (!state || !out) return null_argument();
  return guarded([&] {
    pbss::OracleLimits limits;
    bool bfs = false;
    if (options) {
      if (options->max_depth < 0) return fail(PBSS_ERR_INVALID_ARGUMENT, "negative depth limit");
      if (options->max_expanded > 0) limits.max_expanded_states = options->max_expanded;
      if (options->max_depth > 0) limits.max_depth = options->max_depth;
      bfs = options->use_bfs != 0;
    }
    pbss::OracleResult result =
        bfs ? pbss::bfs_optimal(state->value, limits) : pbss::solve_optimal(state->value, limits);
    out->steps = result.steps.value_or(-1);
    out->expanded = result.expanded;
    if (!result.steps && result.limit_reached)
      return fail(PBSS_ERR_EXHAUSTED, "search limit reached after " +
                                          std::to_string(result.expanded) + " expansions");
    return PBSS_OK;
  });
}

pbss_status pbss_generate(const pbss_generator_spec* spec, pbss_state** out) {
  if (!spec || !out || (spec->io_count > 0 && !spec->io_xy)) return null_argument();
  return guarded([&] {
    pbss::GeneratorSpec g{spec->width, spec->height, spec->n_escorts, spec->n_targets, {},
                          spec->seed};
    for (std::size_t i = 0; i < spec->io_count; ++i)
      g.io_positions.push_back({spec->io_xy[2 * i], spec->io_xy[2 * i + 1]});
    *out = new pbss_state{pbss::generate(g)};
    return PBSS_OK;
  });
}

pbss_status pbss_sweep_fig17(int escorts, const pbss_bench_options* options, pbss_report** out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new pbss_report{pbss::sweep_fig17(escorts, bench_options(options)), escorts};
    return PBSS_OK;
  });
}

pbss_status pbss_bench_multi(uint64_t base_seed, const pbss_bench_options* options,
                             pbss_report** out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new pbss_report{
        pbss::bench_multi(pbss::multi_item_specs(base_seed), bench_options(options)), std::nullopt};
    return PBSS_OK;
  });
}

pbss_status pbss_report_render(const pbss_report* report, pbss_format format, char** out) {
  if (!report || !out) return null_argument();
  return guarded([&] {
    *out = copy_string(format == PBSS_FORMAT_JSON ? pbss::render_report_json(report->value)
                                                  : pbss::render_report_text(report->value));
    return PBSS_OK;
  });
}

pbss_status pbss_report_grid(const pbss_report* report, char** out) {
  if (!report || !out) return null_argument();
  if (!report->fig17_escorts) return fail(PBSS_ERR_INVALID_ARGUMENT, "not a fig17 sweep report");
  return guarded([&] {
    *out = copy_string(pbss::render_fig17_grid(*report->fig17_escorts, report->value));
    return PBSS_OK;
  });
}

int pbss_report_rows(const pbss_report* report) {
  return report ? static_cast<int>(report->value.rows.size()) : 0;
}

double pbss_report_mean_steps(const pbss_report* report) {
  return report ? report->value.mean_steps() : 0.0;
}

int pbss_report_gap(const pbss_report* report, double* out) {
  if (!report || !out) return 0;
  auto gap = report->value.gap_percent();
  if (!gap) return 0;
  *out = *gap;
  return 1;
}

int pbss_report_all_solved(const pbss_report* report) {
  return report && report->value.all_solved() ? 1 : 0;
}

void pbss_report_free(pbss_report* report) { delete report; }

}  // extern "C"
