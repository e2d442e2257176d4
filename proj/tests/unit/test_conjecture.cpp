#include <random>
#include <set>

#include "doctest.h"
#include "optimist/conjecture.hpp"
#include "optimist/knowledge_table.hpp"

using namespace optimist;

namespace {

KnowledgeTable table_of(const std::vector<Graph>& graphs) {
  return KnowledgeTable::build(graphs, InvariantRegistry::standard());
}

std::vector<Graph> case_study_graphs() {
  return {named_graph(GraphFamily::complete, 2), named_graph(GraphFamily::complete, 3),
          named_graph(GraphFamily::path, 3)};
}

Conjecture make(const KnowledgeTable& t, const std::string& property, Relation rel, std::vector<Term> terms,
                Rational intercept) {
  Conjecture c{Hypothesis::from_table(t, property, default_property_display(property)),
               LinearConclusion("independence_number", rel, std::move(terms), intercept), 0, {}};
  return c;
}

// Five connected bipartite graphs, three of them trees, and K3.
std::vector<Graph> bipartite_corpus() {
  return {named_graph(GraphFamily::complete, 2), named_graph(GraphFamily::path, 3), named_graph(GraphFamily::path, 4),
          named_graph(GraphFamily::cycle, 4), named_graph(GraphFamily::cycle, 6),
          named_graph(GraphFamily::complete, 3)};
}

}  // namespace

TEST_CASE("holds_on") {
  auto t = table_of(case_study_graphs());
  auto c = make(t, "connected", Relation::eq, {{1, "order"}, {-1, "minimum_degree"}}, 0);
  auto h = holds_on(c, t);
  CHECK(h.valid);
  CHECK(h.counterexamples.empty());

  t.append_graph(named_graph(GraphFamily::path, 6), InvariantRegistry::standard());
  h = holds_on(c, t);
  CHECK_FALSE(h.valid);
  CHECK(h.counterexamples == NameSet{"G3"});

  // No row satisfies the hypothesis: vacuously valid.
  auto vacuous = make(t, "connected_and_regular", Relation::le, {}, 0);
  auto only_paths = table_of({named_graph(GraphFamily::path, 3), named_graph(GraphFamily::path, 5)});
  auto v = holds_on(vacuous, only_paths);
  CHECK(v.valid);
  CHECK(v.counterexamples.empty());

  auto unknown = c;
  unknown.conclusion = LinearConclusion("independence_number", Relation::le, {{1, "girth"}}, 0);
  CHECK_THROWS_AS(holds_on(unknown, t), TableError);
}

TEST_CASE("recompute_touch") {
  auto t = table_of(bipartite_corpus());
  auto konig = make(t, "connected_and_bipartite", Relation::eq, {{1, "order"}, {-1, "matching_number"}}, 0);
  auto fresh = recompute_touch(konig, t);
  CHECK(fresh.touch == 5);
  CHECK(fresh.sharps == NameSet{"G0", "G1", "G2", "G3", "G4"});

  auto paths = table_of({named_graph(GraphFamily::path, 3)});
  auto empty_hyp = make(paths, "regular", Relation::le, {{1, "order"}}, 0);
  CHECK(recompute_touch(empty_hyp, paths).touch == 0);

  auto k2 = table_of({named_graph(GraphFamily::complete, 2)});
  auto at_most_n = make(k2, "connected", Relation::le, {{1, "order"}}, 0);
  CHECK(recompute_touch(at_most_n, k2).touch == 0);

  auto wrong = make(t, "connected", Relation::le, {}, 1);
  CHECK_THROWS_AS(recompute_touch(wrong, t), ConjectureError);
}

TEST_CASE("rendering") {
  auto t = table_of(bipartite_corpus());
  auto konig = make(t, "connected_and_bipartite", Relation::eq, {{1, "order"}, {-1, "matching_number"}}, 0);
  CHECK(render(konig) ==
        "If G is a connected and bipartite graph, then independence_number = order - matching_number");
  auto half = make(t, "connected_and_bipartite", Relation::ge, {{Rational(1, 2), "order"}}, 0);
  CHECK(render(half) == "If G is a connected and bipartite graph, then independence_number >= 1/2 * order");
  auto constant = make(t, "connected", Relation::le, {{0, "order"}, {0, "maximum_degree"}}, 1);
  CHECK(render(constant) == "If G is a connected graph, then independence_number <= 1");
  CHECK(constant.conclusion.terms().empty());
  auto negative = make(t, "tree", Relation::ge, {{-1, "maximum_degree"}, {Rational(-3, 2), "order"}}, -2);
  CHECK(render(negative) == "If G is a tree, then independence_number >= -maximum_degree - 3/2 * order - 2");
  auto zero = make(t, "regular", Relation::le, {}, 0);
  CHECK(zero.conclusion.render() == "independence_number <= 0");
  auto plus = make(t, "regular", Relation::le, {{2, "order"}}, Rational(1, 3));
  CHECK(plus.conclusion.render_expression() == "2 * order + 1/3");
}

TEST_CASE("relation names") {
  CHECK(to_string(Relation::le) == "<=");
  CHECK(to_string(Relation::ge) == ">=");
  CHECK(to_string(Relation::eq) == "=");
  CHECK(parse_relation(">=") == Relation::ge);
  CHECK_THROWS(parse_relation("<"));
}

TEST_CASE("rendering is injective over random conclusions") {
  const std::vector<std::string> features = {"order", "minimum_degree", "maximum_degree", "matching_number",
                                             "min_maximal_matching_number"};
  const std::vector<std::string> props = {"connected", "bipartite", "tree", "regular", "connected_and_bipartite"};
  auto t = table_of(bipartite_corpus());
  std::mt19937 rng(29);
  std::uniform_int_distribution<long> num(-8, 8), den(1, 10);
  std::map<std::string, Conjecture> seen;
  for (int i = 0; i < 4000; ++i) {
    std::vector<Term> terms;
    std::size_t a = rng() % features.size(), b = rng() % features.size();
    if (a == b) b = (b + 1) % features.size();
    Rational wa(num(rng), den(rng)), wb(num(rng), den(rng)), c(num(rng), den(rng));
    wa.canonicalize();
    wb.canonicalize();
    c.canonicalize();
    auto conj = make(t, props[rng() % props.size()], static_cast<Relation>(rng() % 3),
                     {{wa, features[a]}, {wb, features[b]}}, c);
    auto text = render(conj);
    auto [it, fresh] = seen.emplace(text, conj);
    if (!fresh) CHECK(same_statement(it->second, conj));
  }
}

TEST_CASE("statement identity and ids") {
  auto t = table_of(bipartite_corpus());
  auto a = make(t, "bipartite", Relation::eq, {{1, "order"}, {-1, "matching_number"}}, 0);
  auto b = make(t, "bipartite", Relation::eq, {{1, "order"}, {-1, "matching_number"}, {0, "maximum_degree"}}, 0);
  b.touch = 17;
  b.sharps = {"G9"};
  CHECK(same_statement(a, b));
  CHECK(conjecture_id(a) == conjecture_id(b));
  CHECK(conjecture_id(a).size() == 16);
  CHECK(conjecture_id(a).find_first_not_of("0123456789abcdef") == std::string::npos);
  auto tree = make(t, "tree", Relation::eq, {{1, "order"}, {-1, "matching_number"}}, 0);
  CHECK_FALSE(same_statement(a, tree));
  CHECK(conjecture_id(a) != conjecture_id(tree));
  auto le = make(t, "bipartite", Relation::le, {{1, "order"}, {-1, "matching_number"}}, 0);
  CHECK_FALSE(same_statement(a, le));
}

TEST_CASE("generality is counted in the table at call time") {
  auto t = table_of(bipartite_corpus());
  auto tree = Hypothesis::from_table(t, "tree", "a tree");
  auto bip = Hypothesis::from_table(t, "connected_and_bipartite", "a connected and bipartite graph");
  CHECK(tree.true_objects.size() == 3);
  CHECK(bip.true_objects.size() == 5);
  CHECK(more_general(bip, tree, t));
  CHECK_FALSE(more_general(tree, bip, t));
  auto regular = Hypothesis::from_table(t, "regular", "a regular graph");
  CHECK(regular.true_objects.size() == 4);
  CHECK(more_general(regular, tree, t));
  // Three more trees turn the comparison around even though the stored sets
  // are snapshots.
  auto grown = t;
  auto reg = InvariantRegistry::standard();
  for (int n : {5, 6, 7}) grown.append_graph(named_graph(GraphFamily::star, n), reg);
  CHECK(tree.true_objects.size() == 3);
  CHECK(more_general(tree, regular, grown));
  CHECK_FALSE(more_general(regular, tree, grown));
  CHECK_FALSE(more_general(tree, tree, grown));
}

TEST_CASE("JSON round trip") {
  auto t = table_of(bipartite_corpus());
  auto c = recompute_touch(
      make(t, "connected_and_bipartite", Relation::ge, {{Rational(1, 2), "order"}, {Rational(-2, 3), "minimum_degree"}},
           Rational(-5, 7)),
      t);
  auto j = to_json(c);
  CHECK(j.at("id") == conjecture_id(c));
  CHECK(j.at("text") == render(c));
  CHECK(j.at("relation") == ">=");
  CHECK(j.at("terms").at(0).at("coef") == "1/2");
  CHECK(j.at("intercept") == "-5/7");
  auto back = conjecture_from_json(j);
  CHECK(same_statement(back, c));
  CHECK(back.touch == c.touch);
  CHECK(back.sharps == c.sharps);
  CHECK(back.hypothesis == c.hypothesis);
  CHECK(to_json(back) == j);

  auto broken = j;
  broken["relation"] = "<";
  CHECK_THROWS(conjecture_from_json(broken));
  broken = j;
  broken["intercept"] = "x";
  CHECK_THROWS(conjecture_from_json(broken));
  broken = j;
  broken.erase("target");
  CHECK_THROWS(conjecture_from_json(broken));
}

TEST_CASE("appending rows never revives an invalid conjecture") {
  auto t = table_of(case_study_graphs());
  auto reg = InvariantRegistry::standard();
  auto c = make(t, "connected", Relation::eq, {{1, "order"}, {-1, "minimum_degree"}}, 0);
  t.append_graph(named_graph(GraphFamily::path, 6), reg);
  REQUIRE_FALSE(holds_on(c, t).valid);
  for (int n = 2; n <= 7; ++n) {
    t.append_graph(named_graph(GraphFamily::complete, n), reg);
    CHECK_FALSE(holds_on(c, t).valid);
  }
}
