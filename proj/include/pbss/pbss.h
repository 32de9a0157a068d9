#ifndef PBSS_PBSS_H
#define PBSS_PBSS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PBSS_API __declspec(dllexport)
#else
#define PBSS_API __attribute__((visibility("default")))
#endif

/* Retrieval routing for puzzle-based storage grids. Every call returns a
 * status; on failure pbss_last_error_message() describes the cause for the
 * calling thread. Strings handed out by the library are released with
 * pbss_string_free, handles with their own *_free. */

typedef enum pbss_status {
  PBSS_OK = 0,
  PBSS_ERR_PARSE = 1,
  PBSS_ERR_INFEASIBLE = 2,
  PBSS_ERR_ILLEGAL_ACTION = 3,
  PBSS_ERR_NO_ACTION = 4,
  PBSS_ERR_EXHAUSTED = 5,
  PBSS_ERR_INVALID_ARGUMENT = 6,
  PBSS_ERR_REPLAY_MISMATCH = 7,
  PBSS_ERR_OUT_OF_RANGE = 8,
  PBSS_ERR_IO = 9,
  PBSS_ERR_INTERNAL = 10
} pbss_status;

typedef enum pbss_format { PBSS_FORMAT_TEXT = 0, PBSS_FORMAT_JSON = 1 } pbss_format;

typedef enum pbss_reason {
  PBSS_REASON_TOTAL_DISTANCE = 0,
  PBSS_REASON_REQUIRED_ESCORTS = 1,
  PBSS_REASON_MIN_DISTANCE_MATRIX = 2,
  PBSS_REASON_NEUTRAL = 3
} pbss_reason;

/* Distance-matrix values that no escort can reach are reported as this. */
#define PBSS_UNREACHABLE (-1)

typedef struct pbss_state pbss_state;
typedef struct pbss_trace pbss_trace;
typedef struct pbss_report pbss_report;

PBSS_API const char* pbss_last_error_message(void);
PBSS_API const char* pbss_status_name(pbss_status status);
PBSS_API void pbss_string_free(char* text);

/* ---- grid states ---- */

/* Map text: "W H [retrieved]", "IO x,y ...", then H rows of '.', '#', 'T'. */
PBSS_API pbss_status pbss_state_parse(const char* text, pbss_state** out);
PBSS_API pbss_status pbss_state_render(const pbss_state* state, char** out);
PBSS_API void pbss_state_free(pbss_state* state);

PBSS_API int pbss_state_width(const pbss_state* state);
PBSS_API int pbss_state_height(const pbss_state* state);
PBSS_API int pbss_state_retrieved(const pbss_state* state);
PBSS_API int pbss_state_target_count(const pbss_state* state);
PBSS_API int pbss_state_escort_count(const pbss_state* state);
/* Glyph at (x, y): '.', '#' or 'T'; 0 when out of bounds. */
PBSS_API char pbss_state_cell(const pbss_state* state, int x, int y);

/* Moves the escort at (fx, fy) into the item at (tx, ty), then retrieves any
 * target item standing on an IO. */
PBSS_API pbss_status pbss_state_apply(const pbss_state* state, int fx, int fy, int tx, int ty,
                                      pbss_state** out);

/* ---- status evaluation ---- */

typedef struct pbss_indexes {
  int d_min;        /* minimal total item-IO distance */
  int et_min;       /* minimal total required escorts */
  int min_d;        /* smallest escort travel estimate, PBSS_UNREACHABLE if none */
  int assignments;  /* number of distance-minimal item-IO assignments */
} pbss_indexes;

PBSS_API pbss_status pbss_evaluate(const pbss_state* state, pbss_indexes* out);

/* ---- heuristic solver ---- */

typedef struct pbss_solve_options {
  uint64_t seed;
  int max_steps;     /* 0: 20 * width * height */
  int cycle_memory;  /* 0: 64 */
} pbss_solve_options;

typedef struct pbss_record {
  int step;
  int from_x, from_y;
  int to_x, to_y;
  pbss_reason reason;
  int value_before;  /* PBSS_UNREACHABLE for an unreachable matrix value */
  int value_after;
  int reward;
} pbss_record;

/* Succeeds whether or not the cap was hit; check pbss_trace_solved. A NULL
 * options pointer selects the defaults. */
PBSS_API pbss_status pbss_solve(const pbss_state* state, const pbss_solve_options* options,
                                pbss_trace** out);
PBSS_API int pbss_trace_steps(const pbss_trace* trace);
PBSS_API int pbss_trace_solved(const pbss_trace* trace);
PBSS_API pbss_status pbss_trace_record(const pbss_trace* trace, int index, pbss_record* out);
PBSS_API pbss_status pbss_trace_initial(const pbss_trace* trace, pbss_state** out);
PBSS_API pbss_status pbss_trace_render(const pbss_trace* trace, pbss_format format, char** out);
/* JSON traces (starting with '{') carry their map and ignore `initial`; text
 * traces need it. */
PBSS_API pbss_status pbss_trace_parse(const char* text, const pbss_state* initial,
                                      pbss_trace** out);
PBSS_API void pbss_trace_free(pbss_trace* trace);

/* Re-applies the trace; PBSS_ERR_REPLAY_MISMATCH if a move does not apply. */
PBSS_API pbss_status pbss_replay(const pbss_trace* trace, pbss_state** final_state);
/* ASCII frames: initial board plus one annotated board per move. */
PBSS_API pbss_status pbss_replay_frames(const pbss_trace* trace, char** out);

/* ---- exact oracle ---- */

typedef struct pbss_oracle_options {
  uint64_t max_expanded;  /* 0: 20 000 000 */
  int max_depth;          /* 0: 1000 */
  int use_bfs;            /* nonzero: plain breadth-first reference search */
} pbss_oracle_options;

typedef struct pbss_oracle_result {
  int steps;  /* optimal move count, -1 if none was found */
  uint64_t expanded;
} pbss_oracle_result;

/* PBSS_ERR_EXHAUSTED when a limit stopped the search; PBSS_OK with steps -1
 * when the instance is unsolvable. */
PBSS_API pbss_status pbss_oracle_solve(const pbss_state* state, const pbss_oracle_options* options,
                                       pbss_oracle_result* out);

/* ---- instance generation ---- */

typedef struct pbss_generator_spec {
  int width, height;
  int n_escorts, n_targets;
  const int* io_xy; /* io_count pairs x0, y0, x1, y1, ... */
  size_t io_count;
  uint64_t seed;
} pbss_generator_spec;

PBSS_API pbss_status pbss_generate(const pbss_generator_spec* spec, pbss_state** out);

/* ---- benchmark suites ---- */

typedef struct pbss_bench_options {
  int seeds;              /* solver seeds per case, 0: 1 */
  int max_steps;          /* 0: solver default */
  int run_oracle;
  uint64_t max_expanded;  /* 0: oracle default */
} pbss_bench_options;

PBSS_API pbss_status pbss_sweep_fig17(int escorts, const pbss_bench_options* options,
                                      pbss_report** out);
PBSS_API pbss_status pbss_bench_multi(uint64_t base_seed, const pbss_bench_options* options,
                                      pbss_report** out);
PBSS_API pbss_status pbss_report_render(const pbss_report* report, pbss_format format, char** out);
/* Fig. 17 sweeps only: per-cell "heuristic/optimum" grid. */
PBSS_API pbss_status pbss_report_grid(const pbss_report* report, char** out);
PBSS_API int pbss_report_rows(const pbss_report* report);
PBSS_API double pbss_report_mean_steps(const pbss_report* report);
/* Returns 1 and writes the gap in percent when some row has an optimum. */
PBSS_API int pbss_report_gap(const pbss_report* report, double* out);
PBSS_API int pbss_report_all_solved(const pbss_report* report);
PBSS_API void pbss_report_free(pbss_report* report);

#ifdef __cplusplus
}
#endif

#endif
