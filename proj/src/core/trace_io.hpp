#pragma once

#include <string>
#include <string_view>

#include "solver.hpp"

namespace pbss {

// Text trace:
//   # pbss-trace v1
//   step from to reason value_before value_after reward   (one line per move)
//   # steps=N solved=yes|no
// Positions are "x,y"; an unreachable distance-matrix value is "inf".
std::string render_trace_text(const SolveTrace& trace);

// Structured export: {"format": "pbss-trace", "version": 1, "initial": <map
// text>, "solved", "steps", "records": [...]}, with null for "inf".
std::string render_trace_json(const SolveTrace& trace);

// Reads either form. A JSON trace carries its own initial map; the text form
// takes `initial`. Throws Error(kParse) with "line L, column C: cause" for
// malformed text, Error(kReplayMismatch) if a move does not apply, and sets
// `solved` from the replayed final state.
SolveTrace parse_trace(std::string_view text, const GridState& initial);
SolveTrace parse_trace_json(std::string_view text);

// One frame per status: the initial board, then each move annotated with its
// reason and reward, closing with the solved/unsolved verdict.
std::string render_replay(const SolveTrace& trace);

}  // namespace pbss
