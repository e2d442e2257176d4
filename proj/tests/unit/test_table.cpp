#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "naive.hpp"
#include "optimist/knowledge_table.hpp"

using namespace optimist;
namespace fs = std::filesystem;

namespace {

std::vector<Graph> case_study_graphs() {
  return {named_graph(GraphFamily::complete, 2), named_graph(GraphFamily::complete, 3),
          named_graph(GraphFamily::path, 3)};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("optimist_table_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("build the three-graph table") {
  auto registry = InvariantRegistry::standard();
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  REQUIRE(t.size() == 3);
  CHECK(t.rows()[0].name == "G0");
  CHECK(t.rows()[2].name == "G2");
  CHECK(t.numeric_value(2, "independence_number") == 2);
  CHECK(t.numeric_value(2, "order") == 3);
  CHECK(t.numeric_value(2, "minimum_degree") == 1);
  CHECK(t.numeric_value(0, "matching_number") == 1);
  CHECK(t.flag_value(1, "regular"));
  CHECK_FALSE(t.flag_value(1, "bipartite"));
  CHECK(t.numeric_columns() == registry.numeric_names());
  CHECK(t.boolean_columns() == registry.boolean_names());
  CHECK(t.graph("G1") == graphs[1]);
}

TEST_CASE("empty and single-row tables") {
  auto registry = InvariantRegistry::standard();
  auto empty = KnowledgeTable::build(std::vector<Graph>{}, registry);
  CHECK(empty.empty());
  CHECK(empty.numeric_columns().size() == 6);
  CHECK(empty.boolean_columns().size() == 6);

  std::vector<Graph> k2{named_graph(GraphFamily::complete, 2)};
  auto one = KnowledgeTable::build(k2, registry);
  CHECK(one.size() == 1);
  CHECK(one.numeric_value(0, "matching_number") == 1);

  auto grown = empty;
  CHECK(grown.append_graph(k2[0], registry) == "G0");
  CHECK(grown == one);
}

TEST_CASE("append keeps existing rows and names the next graph") {
  auto registry = InvariantRegistry::standard();
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  auto before = t.rows();
  Graph p6 = named_graph(GraphFamily::path, 6);
  CHECK(t.append_graph(p6, registry) == "G3");
  REQUIRE(t.size() == 4);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(t.rows()[i] == before[i]);
  CHECK(t.numeric_value(3, "independence_number") == testing::naive_independence_number(p6));
  CHECK(t.numeric_value(3, "independence_number") == 3);
  CHECK(t.append_graph(graphs[0], registry) == "G4");  // duplicates are accepted
}

TEST_CASE("append over the ceiling fails and leaves the table unchanged") {
  auto registry = InvariantRegistry::standard(5);
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  auto copy = t;
  CHECK_THROWS_AS(t.append_graph(named_graph(GraphFamily::path, 6), registry), TableError);
  CHECK(t == copy);
  try {
    t.append_graph(named_graph(GraphFamily::path, 6), registry);
  } catch (const TableError& e) {
    CHECK(std::string(e.what()).find("G3") != std::string::npos);
  }
}

TEST_CASE("filter by property") {
  auto registry = InvariantRegistry::standard();
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  auto bip = t.filter_by_property("bipartite");
  CHECK(bip.names == std::vector<std::string>{"G0", "G2"});
  CHECK(bip.indices == std::vector<std::size_t>{0, 2});
  CHECK(t.filter_by_property("connected").names.size() == 3);
  CHECK(t.count_true("tree") == 2);
  CHECK_THROWS_AS(t.filter_by_property("no_such_column"), TableError);
  CHECK_THROWS_AS(t.filter_by_property("order"), TableError);
  CHECK_THROWS_AS(t.numeric_value(0, "connected"), TableError);
}

TEST_CASE("save and load round trip") {
  TempDir dir;
  auto registry = InvariantRegistry::standard();
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  auto csv = dir.path / "table.csv";
  save_table(t, csv);
  CHECK(fs::exists(sidecar_path(csv)));
  CHECK(load_table(csv) == t);
  CHECK(table_from_csv(table_to_csv(t), table_sidecar(t)) == t);
  CHECK(table_to_csv(t).rfind("name,order,minimum_degree,", 0) == 0);
}

TEST_CASE("load rejects broken files") {
  TempDir dir;
  auto registry = InvariantRegistry::standard();
  auto graphs = case_study_graphs();
  auto t = KnowledgeTable::build(graphs, registry);
  auto csv = dir.path / "table.csv";
  save_table(t, csv);

  SUBCASE("missing column") {
    std::string text = table_to_csv(t);
    auto pos = text.find(",maximum_degree");
    text.erase(pos, std::string(",maximum_degree").size());
    write(csv, text);
    try {
      load_table(csv);
      FAIL("expected an error");
    } catch (const TableError& e) {
      CHECK(std::string(e.what()).find("maximum_degree") != std::string::npos);
    }
  }
  SUBCASE("empty file") {
    write(csv, "");
    CHECK_THROWS_AS(load_table(csv), TableError);
  }
  SUBCASE("schema mismatch") {
    auto side = nlohmann::json::parse(table_sidecar(t));
    side["schema"] = "optimist-table/0";
    write(sidecar_path(csv), side.dump());
    CHECK_THROWS_AS(load_table(csv), TableError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_table(dir.path / "nope.csv"), TableError); }
  SUBCASE("ragged row") {
    write(csv, table_to_csv(t) + "G9,1\n");
    CHECK_THROWS_AS(load_table(csv), TableError);
  }
}

TEST_CASE("rebuilding from the stored graphs reproduces every value") {
  auto registry = InvariantRegistry::standard();
  std::vector<Graph> graphs = case_study_graphs();
  graphs.push_back(named_graph(GraphFamily::path, 6));
  graphs.push_back(parse_graph6("IheA@GUAo"));
  auto t = KnowledgeTable::build(graphs, registry);
  std::vector<Graph> stored;
  for (const auto& row : t.rows()) stored.push_back(t.graph(row.name));
  CHECK(KnowledgeTable::build(stored, registry) == t);
}
