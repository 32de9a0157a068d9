#include "trace_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace pbss {

namespace {

constexpr std::string_view kHeader = "# pbss-trace v1";

std::string value_text(int value) {
  return value == kUnreachable ? "inf" : std::to_string(value);
}

nlohmann::json value_json(int value) {
  return value == kUnreachable ? nlohmann::json(nullptr) : nlohmann::json(value);
}

[[noreturn]] void parse_fail(int line, int column, const std::string& cause) {
  throw Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + cause);
}

bool to_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool to_position(std::string_view s, Position& out) {
  auto comma = s.find(',');
  return comma != std::string_view::npos && to_int(s.substr(0, comma), out.x) &&
         to_int(s.substr(comma + 1), out.y);
}

SolveTrace finish(SolveTrace trace) {
  GridState final_state = replay(trace);
  trace.solved = final_state.count(CellKind::kTargetItem) == 0;
  return trace;
}

}  // namespace

std::string render_trace_text(const SolveTrace& trace) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const DecisionRecord& r : trace.records) {
    os << r.step << ' ' << to_string(r.move.escort_from) << ' ' << to_string(r.move.escort_to)
       << ' ' << reason_name(r.reason) << ' ' << value_text(r.value_before) << ' '
       << value_text(r.value_after) << ' ' << r.reward << '\n';
  }
  os << "# steps=" << trace.total_steps() << " solved=" << (trace.solved ? "yes" : "no") << '\n';
  return os.str();
}

std::string render_trace_json(const SolveTrace& trace) {
  nlohmann::json records = nlohmann::json::array();
  for (const DecisionRecord& r : trace.records) {
    records.push_back({{"step", r.step},
                       {"from", {r.move.escort_from.x, r.move.escort_from.y}},
                       {"to", {r.move.escort_to.x, r.move.escort_to.y}},
                       {"reason", reason_name(r.reason)},
                       {"value_before", value_json(r.value_before)},
                       {"value_after", value_json(r.value_after)},
                       {"reward", r.reward}});
  }
  nlohmann::json doc{{"format", "pbss-trace"},
                     {"version", 1},
                     {"initial", render_map(trace.initial)},
                     {"solved", trace.solved},
                     {"steps", trace.total_steps()},
                     {"records", records}};
  return doc.dump(2) + "\n";
}

SolveTrace parse_trace(std::string_view text, const GridState& initial) {
  SolveTrace trace{initial, {}, false};
  int line_no = 0;
  bool seen_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!seen_header) {
      if (line != kHeader) parse_fail(line_no, 1, "expected '" + std::string(kHeader) + "'");
      seen_header = true;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::pair<std::string_view, int>> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      std::size_t from = i;
      while (i < line.size() && line[i] != ' ') ++i;
      if (i > from) fields.emplace_back(line.substr(from, i - from), static_cast<int>(from) + 1);
    }
    if (fields.size() != 7)
      parse_fail(line_no, 1, "expected 7 fields, got " + std::to_string(fields.size()));

    DecisionRecord r;
    if (!to_int(fields[0].first, r.step) ||
        r.step != static_cast<int>(trace.records.size()) + 1)
      parse_fail(line_no, fields[0].second,
                 "expected step " + std::to_string(trace.records.size() + 1));
    if (!to_position(fields[1].first, r.move.escort_from))
      parse_fail(line_no, fields[1].second, "bad position '" + std::string(fields[1].first) + "'");
    if (!to_position(fields[2].first, r.move.escort_to))
      parse_fail(line_no, fields[2].second, "bad position '" + std::string(fields[2].first) + "'");
    auto reason = parse_reason(fields[3].first);
    if (!reason)
      parse_fail(line_no, fields[3].second, "unknown reason '" + std::string(fields[3].first) + "'");
    r.reason = *reason;
    for (int k = 4; k <= 5; ++k) {
      int& slot = k == 4 ? r.value_before : r.value_after;
      if (fields[static_cast<std::size_t>(k)].first == "inf") {
        slot = kUnreachable;
      } else if (!to_int(fields[static_cast<std::size_t>(k)].first, slot)) {
        parse_fail(line_no, fields[static_cast<std::size_t>(k)].second, "bad value");
      }
    }
    if (!to_int(fields[6].first, r.reward)) parse_fail(line_no, fields[6].second, "bad reward");
    trace.records.push_back(r);
  }
  if (!seen_header) parse_fail(1, 1, "empty trace");
  return finish(std::move(trace));
}

SolveTrace parse_trace_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  try {
    if (doc.at("format") != "pbss-trace" || doc.at("version") != 1)
      throw Error(ErrorCode::kParse, "not a pbss-trace v1 document");
    SolveTrace trace{parse_map(doc.at("initial").get<std::string>()), {}, false};
    for (const auto& item : doc.at("records")) {
      DecisionRecord r;
      r.step = item.at("step").get<int>();
      r.move.escort_from = {item.at("from").at(0).get<int>(), item.at("from").at(1).get<int>()};
      r.move.escort_to = {item.at("to").at(0).get<int>(), item.at("to").at(1).get<int>()};
      auto reason = parse_reason(item.at("reason").get<std::string>());
      if (!reason) throw Error(ErrorCode::kParse, "unknown reason in step " + std::to_string(r.step));
      r.reason = *reason;
      r.value_before = item.at("value_before").is_null() ? kUnreachable
                                                          : item.at("value_before").get<int>();
      r.value_after = item.at("value_after").is_null() ? kUnreachable
                                                        : item.at("value_after").get<int>();
      r.reward = item.at("reward").get<int>();
      trace.records.push_back(r);
    }
    return finish(std::move(trace));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string render_replay(const SolveTrace& trace) {
  std::ostringstream os;
  GridState state = trace.initial;
  os << "== step 0 (initial)\n" << render_map(state);
  for (const DecisionRecord& r : trace.records) {
    if (!is_legal(state, r.move))
      throw Error(ErrorCode::kReplayMismatch,
                  "step " + std::to_string(r.step) + ": move " + to_string(r.move.escort_from) +
                      " -> " + to_string(r.move.escort_to) + " does not apply");
    state = apply_action(state, r.move);
    os << "\n== step " << r.step << ": " << to_string(r.move.escort_from) << " -> "
       << to_string(r.move.escort_to) << "  " << reason_name(r.reason) << ' '
       << value_text(r.value_before) << " -> " << value_text(r.value_after)
       << "  reward " << r.reward << '\n'
       << render_map(state);
  }
  const bool solved = state.count(CellKind::kTargetItem) == 0;
  os << "\n" << (solved ? "solved" : "unsolved") << " after " << trace.total_steps()
     << " steps\n";
  return os.str();
}

}  // namespace pbss
