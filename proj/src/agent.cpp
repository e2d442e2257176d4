#include "optimist/agent.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace optimist {

using nlohmann::json;

json to_json(const AgentConfig& c) {
  return {
      {"smokey", std::string(to_string(c.smokey))},
      {"min_touch", c.min_touch},
      {"ceiling", c.ceiling},
      {"features", c.features},
      {"hypotheses", c.hypotheses},
      {"threads", c.threads},
  };
}

AgentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw AgentError("config must be a JSON object");
  static const std::set<std::string> kKeys = {"smokey", "min_touch", "ceiling", "features", "hypotheses", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw AgentError("unknown config key: " + key);
  }
  AgentConfig c;
  try {
    if (j.contains("smokey")) c.smokey = parse_smokey_mode(j.at("smokey").get<std::string>());
    if (j.contains("min_touch")) c.min_touch = j.at("min_touch").get<std::size_t>();
    if (j.contains("ceiling")) c.ceiling = j.at("ceiling").get<int>();
    if (j.contains("features")) c.features = j.at("features").get<std::vector<std::string>>();
    if (j.contains("hypotheses")) c.hypotheses = j.at("hypotheses").get<std::vector<std::string>>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw AgentError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw AgentError(std::string("bad config value: ") + e.what());
  }
  if (c.ceiling < 1 || c.ceiling > 64) throw AgentError("ceiling must be between 1 and 64");
  return c;
}

namespace {

void check_columns(const AgentConfig& config, const KnowledgeTable& table) {
  for (const auto& f : config.features) {
    if (!table.has_numeric(f)) throw AgentError("configured feature is not a numeric invariant: " + f);
  }
  for (const auto& h : config.hypotheses) {
    if (!table.has_boolean(h)) throw AgentError("configured hypothesis is not a boolean property: " + h);
  }
}

json conjecture_list_json(const std::vector<Conjecture>& list) {
  json out = json::array();
  for (const auto& c : list) out.push_back(to_json(c));
  return out;
}

}  // namespace

Agent Agent::init(std::span<const Graph> graphs, AgentConfig config, std::vector<Conjecture> known_theorems) {
  if (graphs.empty()) throw AgentError("at least one initial graph is required");
  Agent a;
  a.config_ = std::move(config);
  a.registry_ = InvariantRegistry::standard(a.config_.ceiling);
  for (const auto& g : graphs) {
    if (g.order() > a.config_.ceiling) throw CeilingError(g.order(), a.config_.ceiling);
  }
  a.table_ = KnowledgeTable::build(graphs, a.registry_);
  check_columns(a.config_, a.table_);
  for (const auto& k : known_theorems) {
    if (!holds_on(k, a.table_).valid) throw AgentError("known theorem fails on the initial graphs: " + render(k));
  }
  a.known_ = std::move(known_theorems);

  json listed = json::array();
  for (const auto& row : a.table_.rows()) listed.push_back({{"name", row.name}, {"graph6", encode_graph6(a.table_.graph(row.name))}});
  a.record("init", {{"graphs", listed}, {"config", to_json(a.config_)}, {"known_theorems", conjecture_list_json(a.known_)}});
  return a;
}

PipelineOptions Agent::pipeline_options() const {
  PipelineOptions o;
  o.smokey = config_.smokey;
  o.min_touch = config_.min_touch;
  o.features = config_.features;
  o.hypotheses = config_.hypotheses;
  o.sweep.threads = config_.threads;
  o.sweep.display = [this](std::string_view p) { return registry_.display_text(p); };
  return o;
}

void Agent::require_target(const std::string& target) const {
  if (!table_.has_numeric(target)) throw AgentError("unknown target invariant: " + target);
}

void Agent::regenerate(const std::string& target) {
  PipelineReport report = run_pipeline(table_, target, known_, pipeline_options());
  pools_[target] = report.lists;
  reports_[target] = std::move(report);
}

void Agent::record(std::string kind, json detail) { log_.push_back({next_seq_++, std::move(kind), std::move(detail)}); }

std::vector<std::string> Agent::pooled_ids() const {
  std::vector<std::string> ids;
  for (const auto& [target, lists] : pools_) {
    for (const auto* list : {&lists.upper, &lists.lower}) {
      for (const auto& c : *list) ids.push_back(conjecture_id(c));
    }
  }
  return ids;
}

namespace {

UpdateReport diff(const std::map<std::string, ConjectureLists>& before, const std::vector<std::string>& after,
                  const KnowledgeTable& table) {
  UpdateReport r;
  std::set<std::string> a(after.begin(), after.end());
  std::set<std::string> seen;
  for (const auto& [target, lists] : before) {
    for (const auto* list : {&lists.upper, &lists.lower}) {
      for (const auto& c : *list) {
        auto id = conjecture_id(c);
        if (a.count(id) || !seen.insert(id).second) continue;
        (holds_on(c, table).valid ? r.dropped : r.falsified).push_back(id);
      }
    }
  }
  for (const auto& id : after) {
    if (!seen.count(id) && seen.insert(id).second) r.added.push_back(id);
  }
  return r;
}

}  // namespace

const ConjectureLists& Agent::conjecture(const std::string& target) {
  require_target(target);
  regenerate(target);
  const auto& lists = pools_.at(target);
  record("conjecture", {{"target", target}, {"upper", lists.upper.size()}, {"lower", lists.lower.size()}});
  return lists;
}

const PipelineReport* Agent::last_report(const std::string& target) const {
  auto it = reports_.find(target);
  return it == reports_.end() ? nullptr : &it->second;
}

UpdateReport Agent::add_counterexample(const Graph& g) {
  if (g.order() > config_.ceiling) throw CeilingError(g.order(), config_.ceiling);
  Agent next = *this;
  std::string name = next.table_.append_graph(g, next.registry_);
  std::vector<std::string> regenerated;
  for (const auto& [target, lists] : pools_) {
    next.regenerate(target);
    regenerated.push_back(target);
  }
  UpdateReport report = diff(pools_, next.pooled_ids(), next.table_);
  report.graph_name = name;
  next.record("graph_added", {{"name", name},
                              {"graph6", encode_graph6(g)},
                              {"regenerated", regenerated},
                              {"falsified", report.falsified},
                              {"dropped", report.dropped},
                              {"added", report.added}});
  *this = std::move(next);
  return report;
}

UpdateReport Agent::learn_theorems(const std::vector<Conjecture>& theorems) {
  if (theorems.empty()) return {};
  std::vector<Conjecture> fresh;
  for (const auto& t : theorems) {
    if (!table_.has_numeric(t.conclusion.target()) || !table_.has_boolean(t.hypothesis.property)) {
      throw AgentError("theorem refers to unknown columns: " + render(t));
    }
    auto check = holds_on(t, table_);
    if (!check.valid) {
      throw AgentError("refusing to learn a statement with a counterexample (" + *check.counterexamples.begin() +
                       "): " + render(t));
    }
    bool known = std::any_of(known_.begin(), known_.end(), [&](const Conjecture& k) { return same_statement(k, t); }) ||
                 std::any_of(fresh.begin(), fresh.end(), [&](const Conjecture& k) { return same_statement(k, t); });
    if (!known) fresh.push_back(t);
  }
  if (fresh.empty()) return {};
  Agent next = *this;
  std::set<std::string> targets;
  for (const auto& t : fresh) {
    next.known_.push_back(t);
    targets.insert(t.conclusion.target());
  }
  std::vector<std::string> regenerated;
  for (const auto& target : targets) {
    if (!next.pools_.count(target)) continue;
    next.regenerate(target);
    regenerated.push_back(target);
  }
  UpdateReport report = diff(pools_, next.pooled_ids(), next.table_);
  next.record("theorems_learned", {{"theorems", conjecture_list_json(fresh)},
                                   {"regenerated", regenerated},
                                   {"dropped", report.dropped},
                                   {"added", report.added}});
  *this = std::move(next);
  return report;
}

std::optional<Conjecture> Agent::find_in_pools(const std::string& id) const {
  for (const auto& [target, lists] : pools_) {
    for (const auto* list : {&lists.upper, &lists.lower}) {
      for (const auto& c : *list) {
        if (conjecture_id(c) == id) return c;
      }
    }
  }
  return std::nullopt;
}

std::string Agent::write_on_the_wall(const std::string& target) {
  require_target(target);
  if (!pools_.count(target)) conjecture(target);
  return format_report(pools_.at(target));
}

std::string format_report(const ConjectureLists& lists) {
  std::ostringstream out;
  auto section = [&](const std::vector<Conjecture>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << "Conjecture " << i << ". " << render(list[i]) << "\n";
      out << "With equality on " << list[i].touch << " graphs.\n\n";
    }
  };
  section(lists.upper);
  out << "\n";
  section(lists.lower);
  return out.str();
}

std::string format_theorems(const std::vector<Conjecture>& theorems) {
  std::string out;
  for (const auto& t : theorems) out += "Theorem. " + render(t) + "\n";
  return out;
}

json session_to_json(const Agent& a) {
  json pools = json::object();
  for (const auto& [target, lists] : a.pools_) {
    pools[target] = {{"upper", conjecture_list_json(lists.upper)}, {"lower", conjecture_list_json(lists.lower)}};
  }
  json log = json::array();
  for (const auto& e : a.log_) log.push_back({{"seq", e.seq}, {"kind", e.kind}, {"detail", e.detail}});
  return {
      {"schema", kSessionSchema},
      {"config", to_json(a.config_)},
      {"table", {{"csv", table_to_csv(a.table_)}, {"graphs", json::parse(table_sidecar(a.table_))}}},
      {"known_theorems", conjecture_list_json(a.known_)},
      {"pools", pools},
      {"log", log},
      {"next_seq", a.next_seq_},
  };
}

Agent session_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema")) throw AgentError("not a session document");
  if (j.at("schema") != kSessionSchema) {
    throw AgentError("session schema mismatch: expected " + std::string(kSessionSchema) + ", found " +
                     j.at("schema").dump());
  }
  Agent a;
  try {
    a.config_ = config_from_json(j.at("config"));
    a.registry_ = InvariantRegistry::standard(a.config_.ceiling);
    a.table_ = table_from_csv(j.at("table").at("csv").get<std::string>(), j.at("table").at("graphs").dump());
    if (a.table_.numeric_columns() != a.registry_.numeric_names() ||
        a.table_.boolean_columns() != a.registry_.boolean_names()) {
      throw AgentError("session table columns do not match the invariant registry");
    }
    if (a.table_.empty()) throw AgentError("session table has no rows");
    check_columns(a.config_, a.table_);
    for (const auto& k : j.at("known_theorems")) a.known_.push_back(conjecture_from_json(k));
    for (const auto& [target, lists] : j.at("pools").items()) {
      if (!a.table_.has_numeric(target)) throw AgentError("pool for unknown target " + target);
      ConjectureLists l;
      for (const auto& c : lists.at("upper")) l.upper.push_back(conjecture_from_json(c));
      for (const auto& c : lists.at("lower")) l.lower.push_back(conjecture_from_json(c));
      a.pools_[target] = std::move(l);
    }
    for (const auto& e : j.at("log")) {
      a.log_.push_back({e.at("seq").get<std::uint64_t>(), e.at("kind").get<std::string>(), e.at("detail")});
    }
    a.next_seq_ = j.at("next_seq").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw AgentError(std::string("malformed session: ") + e.what());
  } catch (const TableError& e) {
    throw AgentError(std::string("malformed session table: ") + e.what());
  } catch (const ConjectureError& e) {
    throw AgentError(std::string("malformed session conjecture: ") + e.what());
  }
  return a;
}

void save_session(const Agent& agent, const std::filesystem::path& path) {
  std::string text = session_to_json(agent).dump(2) + "\n";
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw AgentError("cannot write " + tmp.string());
    out << text;
    if (!out) throw AgentError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw AgentError("cannot replace " + path.string() + ": " + ec.message());
}

Agent load_session(const std::filesystem::path& path) {
  if (path.empty()) throw AgentError("no session path given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AgentError("cannot open session file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw AgentError("session file " + path.string() + " is not valid JSON: " + e.what());
  }
  return session_from_json(j);
}

}  // namespace optimist
