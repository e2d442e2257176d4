#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "optimist/conjecture.hpp"
#include "optimist/graph.hpp"
#include "optimist/heuristics.hpp"
#include "optimist/invariants.hpp"
#include "optimist/knowledge_table.hpp"
#include "optimist/pipeline.hpp"

namespace optimist {

class AgentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kSessionSchema = "optimist-session/1";

struct AgentConfig {
  SmokeyMode smokey = SmokeyMode::weak;
  std::size_t min_touch = 1;
  int ceiling = kDefaultBruteForceCeiling;
  // Empty means all numeric / boolean columns.
  std::vector<std::string> features;
  std::vector<std::string> hypotheses;
  unsigned threads = 1;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

nlohmann::json to_json(const AgentConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
AgentConfig config_from_json(const nlohmann::json& j);

// Sequence numbers stand in for timestamps so that logs are reproducible.
struct Event {
  std::uint64_t seq = 0;
  std::string kind;
  nlohmann::json detail;

  friend bool operator==(const Event&, const Event&) = default;
};

// Conjecture ids that left / entered the pools during one mutation. A
// conjecture leaving the pools is either falsified by the new table or
// dropped by the filters while still valid (including learned statements).
struct UpdateReport {
  std::vector<std::string> falsified;
  std::vector<std::string> dropped;
  std::vector<std::string> added;
  std::string graph_name;  // set by add_counterexample
};

// One Optimist session: the knowledge table, the pools per target, the
// learned theorems and an append-only event log. Not thread-safe; callers
// serialize mutations.
class Agent {
 public:
  static Agent init(std::span<const Graph> graphs, AgentConfig config = {},
                    std::vector<Conjecture> known_theorems = {});

  const KnowledgeTable& table() const { return table_; }
  const InvariantRegistry& registry() const { return registry_; }
  const AgentConfig& config() const { return config_; }
  const std::vector<Conjecture>& known_theorems() const { return known_; }
  const std::map<std::string, ConjectureLists>& pools() const { return pools_; }
  const std::vector<Event>& log() const { return log_; }

  // Runs the pipeline for `target`, stores and returns the lists.
  const ConjectureLists& conjecture(const std::string& target);
  // Report from the last pipeline run for `target`, if any.
  const PipelineReport* last_report(const std::string& target) const;

  // Appends `g` and regenerates every pooled target. On error nothing changes.
  UpdateReport add_counterexample(const Graph& g);

  // Every theorem must hold on the current table; otherwise AgentError and
  // nothing changes. Pools of the theorems' targets are regenerated; already
  // known statements are skipped, and a call that adds nothing is a no-op.
  UpdateReport learn_theorems(const std::vector<Conjecture>& theorems);

  std::optional<Conjecture> find_in_pools(const std::string& id) const;

  // format_report of the pools, generating them first if needed.
  std::string write_on_the_wall(const std::string& target);

  friend nlohmann::json session_to_json(const Agent& agent);
  friend Agent session_from_json(const nlohmann::json& j);

 private:
  Agent() = default;

  PipelineOptions pipeline_options() const;
  void regenerate(const std::string& target);
  std::vector<std::string> pooled_ids() const;
  void record(std::string kind, nlohmann::json detail);
  void require_target(const std::string& target) const;

  AgentConfig config_;
  InvariantRegistry registry_;
  KnowledgeTable table_;
  std::vector<Conjecture> known_;
  std::map<std::string, ConjectureLists> pools_;
  std::map<std::string, PipelineReport> reports_;
  std::vector<Event> log_;
  std::uint64_t next_seq_ = 1;
};

// Upper list, a blank line, then the lower list; entries are numbered from 0
// within each list.
std::string format_report(const ConjectureLists& lists);

// "Theorem. If G is ..." lines, one per learned theorem.
std::string format_theorems(const std::vector<Conjecture>& theorems);

nlohmann::json session_to_json(const Agent& agent);
// Throws AgentError on a schema mismatch or any malformed part.
Agent session_from_json(const nlohmann::json& j);

void save_session(const Agent& agent, const std::filesystem::path& path);
Agent load_session(const std::filesystem::path& path);

}  // namespace optimist
