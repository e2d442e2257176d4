#include <set>

#include "doctest.h"
#include "enumerate.hpp"
#include "naive.hpp"
#include "optimist/invariants.hpp"

using namespace optimist;

namespace {

Graph K(int n) { return named_graph(GraphFamily::complete, n); }
Graph P(int n) { return named_graph(GraphFamily::path, n); }
Graph C(int n) { return named_graph(GraphFamily::cycle, n); }

}  // namespace

TEST_CASE("independence number examples") {
  CHECK(independence_number(K(3)) == 1);
  CHECK(independence_number(P(3)) == 2);
  CHECK(independence_number(P(6)) == testing::naive_independence_number(P(6)));
  CHECK(independence_number(P(6)) == 3);
  CHECK(independence_number(K(1)) == 1);
}

TEST_CASE("matching number examples") {
  CHECK(matching_number(K(2)) == 1);
  CHECK(matching_number(P(3)) == 1);
  CHECK(matching_number(P(6)) == testing::naive_matchings(P(6)).maximum);
  CHECK(matching_number(P(6)) == 3);
  CHECK(matching_number(K(1)) == 0);
}

TEST_CASE("minimum maximal matching number examples") {
  CHECK(min_maximal_matching_number(K(2)) == 1);
  CHECK(min_maximal_matching_number(P(4)) == testing::naive_matchings(P(4)).minimum_maximal);
  CHECK(min_maximal_matching_number(P(4)) == 1);
  CHECK(min_maximal_matching_number(K(3)) == 1);
  CHECK(min_maximal_matching_number(K(1)) == 0);
}

TEST_CASE("Petersen graph against the naive enumerators") {
  Graph petersen = parse_graph6("IheA@GUAo");
  REQUIRE(petersen.size() == 15);
  auto m = testing::naive_matchings(petersen);
  CHECK(independence_number(petersen) == testing::naive_independence_number(petersen));
  CHECK(matching_number(petersen) == m.maximum);
  CHECK(min_maximal_matching_number(petersen) == m.minimum_maximal);
}

TEST_CASE("degree statistics") {
  auto p3 = degree_stats(P(3));
  CHECK(p3.order == 3);
  CHECK(p3.minimum_degree == 1);
  CHECK(p3.maximum_degree == 2);
  auto k3 = degree_stats(K(3));
  CHECK(k3.minimum_degree == 2);
  CHECK(k3.maximum_degree == 2);
  auto k1 = degree_stats(K(1));
  CHECK(k1.order == 1);
  CHECK(k1.minimum_degree == 0);
  CHECK(k1.maximum_degree == 0);
}

TEST_CASE("boolean properties") {
  auto p3 = boolean_properties(P(3));
  CHECK(p3.at("connected"));
  CHECK(p3.at("bipartite"));
  CHECK(p3.at("tree"));
  CHECK_FALSE(p3.at("regular"));
  auto k3 = boolean_properties(K(3));
  CHECK(k3.at("connected"));
  CHECK_FALSE(k3.at("bipartite"));
  CHECK_FALSE(k3.at("tree"));
  CHECK(k3.at("regular"));
  auto c4 = boolean_properties(C(4));
  CHECK(c4.at("connected"));
  CHECK(c4.at("bipartite"));
  CHECK_FALSE(c4.at("tree"));
  CHECK(c4.at("regular"));
  CHECK(c4.at("connected_and_bipartite"));
  CHECK(c4.at("connected_and_regular"));

  Graph two_edges = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  auto d = boolean_properties(two_edges);
  CHECK_FALSE(d.at("connected"));
  CHECK(d.at("bipartite"));
  CHECK(d.at("regular"));
  CHECK_FALSE(d.at("tree"));
  CHECK_FALSE(d.at("connected_and_bipartite"));
}

TEST_CASE("brute-force invariants refuse graphs over the ceiling") {
  Graph big = named_graph(GraphFamily::path, 21);
  CHECK_THROWS_AS(independence_number(big), CeilingError);
  CHECK_THROWS_AS(matching_number(big), CeilingError);
  CHECK_THROWS_AS(min_maximal_matching_number(big), CeilingError);
  CHECK(independence_number(big, 21) == 11);
  CHECK_THROWS_AS(independence_number(P(6), 5), CeilingError);
  CHECK_NOTHROW(degree_stats(big));
  try {
    independence_number(P(6), 5);
  } catch (const CeilingError& e) {
    CHECK(e.order() == 6);
    CHECK(e.ceiling() == 5);
  }
}

TEST_CASE("standard registry") {
  auto r = InvariantRegistry::standard();
  const std::vector<std::string> numeric = {"order", "minimum_degree", "maximum_degree", "independence_number",
                                            "matching_number", "min_maximal_matching_number"};
  const std::vector<std::string> boolean = {"connected", "bipartite", "tree", "regular",
                                            "connected_and_bipartite", "connected_and_regular"};
  CHECK(r.numeric_names() == numeric);
  CHECK(r.boolean_names() == boolean);
  CHECK(r.display_text("connected") == "a connected graph");
  CHECK(r.display_text("connected_and_bipartite") == "a connected and bipartite graph");
  CHECK(r.display_text("tree") == "a tree");
  CHECK(r.is_numeric("order"));
  CHECK_FALSE(r.is_numeric("tree"));
  CHECK_THROWS(r.add_numeric("tree", [](const Graph&) { return Rational(0); }));
  CHECK_THROWS(r.add_boolean("order", "x", [](const Graph&) { return true; }));
  r.add_numeric("size", [](const Graph& g) { return Rational(static_cast<long>(g.size())); });
  CHECK(r.numeric_names().back() == "size");
}

TEST_CASE("structural properties on every connected graph with n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : testing::connected_graphs(n)) {
      int a = independence_number(g);
      int mu = matching_number(g);
      int mu_star = min_maximal_matching_number(g);
      auto props = boolean_properties(g);
      CHECK(mu >= mu_star);
      CHECK(a >= 1);
      CHECK(a <= n);
      CHECK(mu >= 0);
      CHECK(mu <= n / 2);
      if (props.at("tree")) CHECK(props.at("bipartite"));
      CHECK(props.at("connected"));
    }
  }
}
