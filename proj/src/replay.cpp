#include "optimist/replay.hpp"

#include <algorithm>
#include <sstream>

namespace optimist {

using nlohmann::json;

namespace {

Conjecture pick_for_learning(const Agent& agent, const json& e) {
  if (e.contains("text")) {
    const auto text = e.at("text").get<std::string>();
    for (const auto& [target, lists] : agent.pools()) {
      for (const auto* list : {&lists.upper, &lists.lower}) {
        for (const auto& c : *list) {
          if (render(c) == text) return c;
        }
      }
    }
    throw ReplayError("no pooled conjecture reads \"" + text + "\"");
  }
  if (e.contains("id")) {
    auto c = agent.find_in_pools(e.at("id").get<std::string>());
    if (!c) throw ReplayError("no pooled conjecture has id " + e.at("id").get<std::string>());
    return *c;
  }
  const auto target = e.at("target").get<std::string>();
  const auto bound = e.at("bound").get<std::string>();
  const auto index = e.at("index").get<std::size_t>();
  auto it = agent.pools().find(target);
  if (it == agent.pools().end()) throw ReplayError("no pool for target " + target);
  if (bound != "upper" && bound != "lower") throw ReplayError("bound must be upper or lower");
  const auto& list = bound == "upper" ? it->second.upper : it->second.lower;
  if (index >= list.size()) {
    throw ReplayError(bound + " pool of " + target + " has " + std::to_string(list.size()) + " entries, index " +
                      std::to_string(index) + " is out of range");
  }
  return list[index];
}

}  // namespace

ReplayResult run_replay(std::istream& script) {
  ReplayResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(script, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto fail = [&](const std::string& why) {
      return ReplayError("line " + std::to_string(line_no) + ": " + why);
    };
    json e;
    try {
      e = json::parse(line);
    } catch (const json::exception& ex) {
      throw fail(std::string("not valid JSON: ") + ex.what());
    }
    if (!e.is_object() || !e.contains("event") || !e.at("event").is_string()) {
      throw fail("each line must be an object with an \"event\" string");
    }
    const auto kind = e.at("event").get<std::string>();
    ReplayStep step{line_no, kind, {}};
    try {
      if (kind == "init") {
        if (result.agent) throw ReplayError("init may only appear once");
        std::vector<Graph> graphs;
        for (const auto& g : e.at("graphs")) graphs.push_back(graph_from_payload(g));
        AgentConfig config = e.contains("config") ? config_from_json(e.at("config")) : AgentConfig{};
        result.agent = Agent::init(graphs, config);
        step.summary = std::to_string(graphs.size()) + " graphs";
      } else {
        if (!result.agent) throw ReplayError("the first event must be init");
        Agent& agent = *result.agent;
        if (kind == "conjecture") {
          const auto target = e.at("target").get<std::string>();
          const auto& lists = agent.conjecture(target);
          if (std::find(result.targets.begin(), result.targets.end(), target) == result.targets.end()) {
            result.targets.push_back(target);
          }
          step.summary = target + ": " + std::to_string(lists.upper.size()) + " upper, " +
                         std::to_string(lists.lower.size()) + " lower";
        } else if (kind == "add_graph") {
          Graph g = graph_from_payload(e.at("graph"));
          auto report = agent.add_counterexample(g);
          step.summary = report.graph_name + " = " + encode_graph6(g) + ", " + std::to_string(report.falsified.size()) +
                         " falsified, " + std::to_string(report.dropped.size()) + " dropped, " +
                         std::to_string(report.added.size()) + " added";
        } else if (kind == "learn") {
          Conjecture c = pick_for_learning(agent, e);
          agent.learn_theorems({c});
          step.summary = render(c);
        } else {
          throw ReplayError("unknown event \"" + kind + "\"");
        }
      }
    } catch (const ReplayError& ex) {
      if (std::string(ex.what()).rfind("line ", 0) == 0) throw;
      throw fail(ex.what());
    } catch (const json::exception& ex) {
      throw fail(std::string("bad ") + kind + " event: " + ex.what());
    } catch (const std::exception& ex) {
      throw fail(kind + " failed: " + ex.what());
    }
    result.steps.push_back(std::move(step));
  }
  return result;
}

Agent replay_log(std::span<const Event> log) {
  if (log.empty() || log.front().kind != "init") throw ReplayError("an event log starts with init");
  auto graphs_of = [](const json& listed) {
    std::vector<Graph> graphs;
    for (const auto& g : listed) graphs.push_back(parse_graph6(g.at("graph6").get<std::string>()));
    return graphs;
  };
  auto conjectures_of = [](const json& listed) {
    std::vector<Conjecture> out;
    for (const auto& c : listed) out.push_back(conjecture_from_json(c));
    return out;
  };
  const auto& first = log.front().detail;
  Agent agent = Agent::init(graphs_of(first.at("graphs")), config_from_json(first.at("config")),
                            conjectures_of(first.at("known_theorems")));
  for (const auto& e : log.subspan(1)) {
    if (e.kind == "conjecture") {
      agent.conjecture(e.detail.at("target").get<std::string>());
    } else if (e.kind == "graph_added") {
      agent.add_counterexample(parse_graph6(e.detail.at("graph6").get<std::string>()));
    } else if (e.kind == "theorems_learned") {
      agent.learn_theorems(conjectures_of(e.detail.at("theorems")));
    } else {
      throw ReplayError("event " + std::to_string(e.seq) + " has unknown kind " + e.kind);
    }
  }
  return agent;
}

std::string format_replay(const ReplayResult& result) {
  std::ostringstream out;
  if (!result.agent) {
    out << "Session: 0 graphs, 0 known theorems\n";
    return out.str();
  }
  const Agent& agent = *result.agent;
  out << "Session: " << agent.table().size() << " graphs, " << agent.known_theorems().size() << " known theorems\n";
  out << "\n== Steps\n";
  for (const auto& s : result.steps) out << "line " << s.line << " " << s.event << ": " << s.summary << "\n";
  out << "\n== Known theorems\n" << format_theorems(agent.known_theorems());
  for (const auto& [target, lists] : agent.pools()) out << "\n== Conjectures on " << target << "\n" << format_report(lists);
  out << "\n== Event log\n";
  for (const auto& ev : agent.log()) {
    out << json{{"seq", ev.seq}, {"kind", ev.kind}, {"detail", ev.detail}}.dump() << "\n";
  }
  return out.str();
}

}  // namespace optimist
