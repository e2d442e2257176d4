#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "optimist/knowledge_table.hpp"
#include "optimist/names.hpp"
#include "optimist/rational.hpp"

namespace optimist {

class ConjectureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Relation { le, ge, eq };

// "<=", ">=", "="
std::string_view to_string(Relation r);
Relation parse_relation(std::string_view text);

struct Hypothesis {
  std::string property;
  std::string display;  // "a connected and bipartite graph"
  NameSet true_objects;

  static Hypothesis from_table(const KnowledgeTable& table, const std::string& property, std::string display);

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// Generality is counted in `table` at call time: more satisfying rows means
// more general.
bool more_general(const Hypothesis& a, const Hypothesis& b, const KnowledgeTable& table);

struct Term {
  Rational coef;
  std::string feature;

  friend bool operator==(const Term&, const Term&) = default;
};

// target <rel> sum coef * feature + intercept. Zero-weight terms are dropped
// on construction, so structural equality and rendering agree.
class LinearConclusion {
 public:
  LinearConclusion() = default;
  LinearConclusion(std::string target, Relation relation, std::vector<Term> terms, Rational intercept);
  LinearConclusion(std::string target, Relation relation, const std::vector<Rational>& weights,
                   const std::vector<std::string>& features, Rational intercept);

  const std::string& target() const { return target_; }
  Relation relation() const { return relation_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Rational& intercept() const { return intercept_; }

  // Right-hand side on one table row; throws TableError for a missing column.
  Rational evaluate(const KnowledgeTable& table, std::size_t row) const;
  bool holds(const KnowledgeTable& table, std::size_t row) const;
  bool tight(const KnowledgeTable& table, std::size_t row) const;

  // "independence_number <= order - 1/2 * matching_number + 1"
  std::string render() const;
  std::string render_expression() const;

  friend bool operator==(const LinearConclusion&, const LinearConclusion&) = default;

 private:
  std::string target_;
  Relation relation_ = Relation::le;
  std::vector<Term> terms_;
  Rational intercept_;
};

struct Conjecture {
  Hypothesis hypothesis;
  LinearConclusion conclusion;
  std::size_t touch = 0;
  NameSet sharps;

  bool is_equality() const { return conclusion.relation() == Relation::eq; }
};

// Identity used for dedup, Morgan, known-theorem matching and ids: the
// hypothesis property plus the conclusion. Touch and sharps drift with the
// table and are left out.
bool same_statement(const Conjecture& a, const Conjecture& b);

// 16 hex digits, FNV-1a over the canonical statement.
std::string conjecture_id(const Conjecture& c);

struct HoldsResult {
  bool valid = true;
  NameSet counterexamples;
};

HoldsResult holds_on(const Conjecture& c, const KnowledgeTable& table);

// Throws ConjectureError if the conjecture has a counterexample in `table`.
Conjecture recompute_touch(const Conjecture& c, const KnowledgeTable& table);

// "If G is a connected graph, then independence_number = order - minimum_degree"
std::string render(const Conjecture& c);

nlohmann::json to_json(const Conjecture& c);
Conjecture conjecture_from_json(const nlohmann::json& j);

}  // namespace optimist
