#pragma once

#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "optimist/agent.hpp"

namespace optimist {

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replay scripts are JSON lines, one event per line; blank lines and lines
// starting with '#' are skipped. Events:
//   {"event": "init", "graphs": [<graph>...], "config": {...}}   (first)
//   {"event": "conjecture", "target": "independence_number"}
//   {"event": "add_graph", "graph": <graph>}
//   {"event": "learn", "text": "If G is ..."}            rendered pool entry
//   {"event": "learn", "id": "0123456789abcdef"}
//   {"event": "learn", "target": t, "bound": "upper"|"lower", "index": i}
// A <graph> is {"graph6": "..."} or {"n": 3, "edges": [[0, 1], [1, 2]]}.
// Any other key in an event, e.g. "note", is ignored.

struct ReplayStep {
  std::size_t line = 0;
  std::string event;
  std::string summary;
};

struct ReplayResult {
  std::optional<Agent> agent;
  std::vector<ReplayStep> steps;
  // Targets touched by conjecture events, in first-seen order.
  std::vector<std::string> targets;
};

// Errors carry the script line number.
ReplayResult run_replay(std::istream& script);

// Rebuilds a session by re-running the mutations recorded in its event log.
Agent replay_log(std::span<const Event> log);

// Deterministic text: session summary, learned theorems, a report per target
// and the event log.
std::string format_replay(const ReplayResult& result);

}  // namespace optimist
