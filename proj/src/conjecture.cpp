#include "optimist/conjecture.hpp"

#include <cstdint>
#include <cstdio>

namespace optimist {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
  }
  return "?";
}

Relation parse_relation(std::string_view text) {
  if (text == "<=") return Relation::le;
  if (text == ">=") return Relation::ge;
  if (text == "=") return Relation::eq;
  throw ConjectureError("unknown relation: " + std::string(text));
}

Hypothesis Hypothesis::from_table(const KnowledgeTable& table, const std::string& property, std::string display) {
  Hypothesis h{property, std::move(display), {}};
  for (auto& name : table.filter_by_property(property).names) h.true_objects.insert(std::move(name));
  return h;
}

bool more_general(const Hypothesis& a, const Hypothesis& b, const KnowledgeTable& table) {
  return table.count_true(a.property) > table.count_true(b.property);
}

LinearConclusion::LinearConclusion(std::string target, Relation relation, std::vector<Term> terms,
                                   Rational intercept)
    : target_(std::move(target)), relation_(relation), intercept_(std::move(intercept)) {
  for (auto& t : terms) {
    if (t.coef != 0) terms_.push_back(std::move(t));
  }
}

LinearConclusion::LinearConclusion(std::string target, Relation relation, const std::vector<Rational>& weights,
                                   const std::vector<std::string>& features, Rational intercept)
    : target_(std::move(target)), relation_(relation), intercept_(std::move(intercept)) {
  if (weights.size() != features.size()) throw ConjectureError("weight and feature counts differ");
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] != 0) terms_.push_back({weights[j], features[j]});
  }
}

Rational LinearConclusion::evaluate(const KnowledgeTable& table, std::size_t row) const {
  Rational v = intercept_;
  for (const auto& t : terms_) v += t.coef * table.numeric_value(row, t.feature);
  return v;
}

bool LinearConclusion::holds(const KnowledgeTable& table, std::size_t row) const {
  const Rational& y = table.numeric_value(row, target_);
  Rational f = evaluate(table, row);
  switch (relation_) {
    case Relation::le: return y <= f;
    case Relation::ge: return y >= f;
    case Relation::eq: return y == f;
  }
  return false;
}

bool LinearConclusion::tight(const KnowledgeTable& table, std::size_t row) const {
  return table.numeric_value(row, target_) == evaluate(table, row);
}

std::string LinearConclusion::render_expression() const {
  std::string out;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coef);
    if (out.empty()) {
      if (t.coef < 0) out += "-";
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " * ";
    out += t.feature;
  }
  if (out.empty()) return to_string(intercept_);
  if (intercept_ > 0) out += " + " + to_string(intercept_);
  if (intercept_ < 0) out += " - " + to_string(Rational(-intercept_));
  return out;
}

std::string LinearConclusion::render() const {
  return target_ + " " + std::string(to_string(relation_)) + " " + render_expression();
}

bool same_statement(const Conjecture& a, const Conjecture& b) {
  return a.hypothesis.property == b.hypothesis.property && a.conclusion == b.conclusion;
}

std::string conjecture_id(const Conjecture& c) {
  std::string key = c.hypothesis.property + "|" + c.conclusion.render();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

HoldsResult holds_on(const Conjecture& c, const KnowledgeTable& table) {
  HoldsResult r;
  for (std::size_t i : table.filter_by_property(c.hypothesis.property).indices) {
    if (!c.conclusion.holds(table, i)) r.counterexamples.insert(table.rows()[i].name);
  }
  r.valid = r.counterexamples.empty();
  return r;
}

Conjecture recompute_touch(const Conjecture& c, const KnowledgeTable& table) {
  auto check = holds_on(c, table);
  if (!check.valid) {
    throw ConjectureError("cannot refresh touch of a falsified conjecture: " + render(c) + " (counterexample " +
                          *check.counterexamples.begin() + ")");
  }
  Conjecture out = c;
  out.sharps.clear();
  for (std::size_t i : table.filter_by_property(c.hypothesis.property).indices) {
    if (c.conclusion.tight(table, i)) out.sharps.insert(table.rows()[i].name);
  }
  out.touch = out.sharps.size();
  return out;
}

std::string render(const Conjecture& c) {
  return "If G is " + c.hypothesis.display + ", then " + c.conclusion.render();
}

nlohmann::json to_json(const Conjecture& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : c.conclusion.terms()) terms.push_back({{"coef", to_string(t.coef)}, {"feature", t.feature}});
  return {
      {"id", conjecture_id(c)},
      {"text", render(c)},
      {"hypothesis", c.hypothesis.property},
      {"hypothesis_text", c.hypothesis.display},
      {"true_objects", std::vector<std::string>(c.hypothesis.true_objects.begin(), c.hypothesis.true_objects.end())},
      {"target", c.conclusion.target()},
      {"relation", std::string(to_string(c.conclusion.relation()))},
      {"terms", terms},
      {"intercept", to_string(c.conclusion.intercept())},
      {"touch", c.touch},
      {"sharps", std::vector<std::string>(c.sharps.begin(), c.sharps.end())},
  };
}

Conjecture conjecture_from_json(const nlohmann::json& j) {
  try {
    Conjecture c;
    c.hypothesis.property = j.at("hypothesis").get<std::string>();
    c.hypothesis.display = j.at("hypothesis_text").get<std::string>();
    for (const auto& n : j.at("true_objects")) c.hypothesis.true_objects.insert(n.get<std::string>());
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      terms.push_back({parse_rational(t.at("coef").get<std::string>()), t.at("feature").get<std::string>()});
    }
    c.conclusion = LinearConclusion(j.at("target").get<std::string>(),
                                    parse_relation(j.at("relation").get<std::string>()), std::move(terms),
                                    parse_rational(j.at("intercept").get<std::string>()));
    c.touch = j.at("touch").get<std::size_t>();
    for (const auto& n : j.at("sharps")) c.sharps.insert(n.get<std::string>());
    if (c.sharps.size() != c.touch) throw ConjectureError("touch does not match the sharp set");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConjectureError(std::string("malformed conjecture JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConjectureError(std::string("malformed conjecture JSON: ") + e.what());
  }
}

}  // namespace optimist
