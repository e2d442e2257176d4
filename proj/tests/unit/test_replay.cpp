#include <fstream>
#include <sstream>

#include "doctest.h"
#include "optimist/replay.hpp"

using namespace optimist;

namespace {

const std::string kInit = R"({"event":"init","graphs":[{"graph6":"A_"},{"graph6":"Bw"},{"graph6":"Bg"}]})";
const std::string kTop = "If G is a connected graph, then independence_number = order - minimum_degree";

ReplayResult replay(const std::string& text) {
  std::istringstream in(text);
  return run_replay(in);
}

std::string error_of(const std::string& text) {
  try {
    replay(text);
  } catch (const ReplayError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("an empty script") {
  auto r = replay("");
  CHECK_FALSE(r.agent);
  CHECK(format_replay(r) == "Session: 0 graphs, 0 known theorems\n");
  CHECK_FALSE(replay("# only a comment\n\n   \n").agent);
}

TEST_CASE("steps and summaries") {
  auto r = replay("# header\n" + kInit + "\n{\"event\":\"conjecture\",\"target\":\"independence_number\"}\n" +
                  R"({"event":"add_graph","graph":{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5]]},"note":"P6"})" + "\n");
  REQUIRE(r.agent);
  REQUIRE(r.steps.size() == 3);
  CHECK(r.steps[0].line == 2);
  CHECK(r.steps[0].summary == "3 graphs");
  CHECK(r.steps[1].summary == "independence_number: 17 upper, 4 lower");
  CHECK(r.steps[2].summary.rfind("G3 = EhCG, ", 0) == 0);
  CHECK(r.targets == std::vector<std::string>{"independence_number"});
  auto text = format_replay(r);
  CHECK(text.rfind("Session: 4 graphs, 0 known theorems\n", 0) == 0);
  CHECK(text.find("\n== Conjectures on independence_number\nConjecture 0. ") != std::string::npos);
  CHECK(text.find("\n== Event log\n{\"detail\":") != std::string::npos);
}

TEST_CASE("learn by text, id and index") {
  const std::string conj = "{\"event\":\"conjecture\",\"target\":\"independence_number\"}\n";
  auto by_text = replay(kInit + "\n" + conj + R"({"event":"learn","text":")" + kTop + "\"}\n");
  REQUIRE(by_text.agent);
  REQUIRE(by_text.agent->known_theorems().size() == 1);
  CHECK(render(by_text.agent->known_theorems()[0]) == kTop);

  auto plain = replay(kInit + "\n" + conj);
  auto id = conjecture_id(plain.agent->pools().at("independence_number").upper.at(0));
  auto by_id = replay(kInit + "\n" + conj + R"({"event":"learn","id":")" + id + "\"}\n");
  CHECK(session_to_json(*by_id.agent) == session_to_json(*by_text.agent));

  auto by_index = replay(kInit + "\n" + conj +
                         R"({"event":"learn","target":"independence_number","bound":"upper","index":0})" + "\n");
  CHECK(session_to_json(*by_index.agent) == session_to_json(*by_text.agent));

  CHECK(error_of(kInit + "\n" + conj + R"({"event":"learn","target":"independence_number","bound":"upper","index":99})")
            .rfind("line 3: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + conj + R"({"event":"learn","target":"independence_number","bound":"side","index":0})")
            .rfind("line 3: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + conj + R"({"event":"learn","id":"0000000000000000"})").rfind("line 3: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + conj + R"({"event":"learn","text":"If G is a tree, then order <= 0"})")
            .rfind("line 3: ", 0) == 0);
}

TEST_CASE("errors name the line") {
  CHECK(error_of(kInit + "\n\n" + R"({"event":"add_graph","graph":{"graph6":"A"}})").rfind("line 3: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + R"({"event":"dance"})").rfind("line 2: ", 0) == 0);
  CHECK(error_of(R"({"event":"conjecture","target":"independence_number"})").rfind("line 1: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + kInit).rfind("line 2: ", 0) == 0);
  CHECK(error_of("{not json").rfind("line 1: ", 0) == 0);
  CHECK(error_of("[1, 2]").rfind("line 1: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + R"({"event":"conjecture","target":"girth"})").rfind("line 2: ", 0) == 0);
  CHECK(error_of(kInit + "\n" + R"({"event":"add_graph"})").rfind("line 2: ", 0) == 0);
  CHECK(error_of(R"({"event":"init","graphs":[{"graph6":"A_"}],"config":{"colour":1}})").rfind("line 1: ", 0) == 0);
}

TEST_CASE("the case-study fixture") {
  std::ifstream in(std::string(FIXTURES_DIR) + "/case_study.jsonl");
  REQUIRE(in);
  auto r = run_replay(in);
  REQUIRE(r.agent);
  CHECK(r.agent->table().size() == 7);
  const std::vector<std::string> expected = {
      "If G is a connected graph, then independence_number <= order - minimum_degree",
      "If G is a connected graph, then independence_number <= order - matching_number",
      "If G is a connected and bipartite graph, then independence_number = order - matching_number",
      "If G is a connected and bipartite graph, then independence_number >= maximum_degree",
      "If G is a connected and regular graph, then independence_number <= matching_number",
      "If G is a connected and bipartite graph, then independence_number >= 1/2 * order",
  };
  std::vector<std::string> learned;
  for (const auto& k : r.agent->known_theorems()) learned.push_back(render(k));
  CHECK(learned == expected);
  for (const auto& k : r.agent->known_theorems()) CHECK(holds_on(k, r.agent->table()).valid);

  std::ifstream again(std::string(FIXTURES_DIR) + "/case_study.jsonl");
  CHECK(format_replay(run_replay(again)) == format_replay(r));
  CHECK(session_to_json(replay_log(r.agent->log())) == session_to_json(*r.agent));
}
