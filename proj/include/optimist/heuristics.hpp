#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "optimist/conjecture.hpp"
#include "optimist/knowledge_table.hpp"

namespace optimist {

// Drops repeated statements (first kept), keeps touch > min_touch, and
// stable-sorts by touch, highest first.
std::vector<Conjecture> hazel(std::vector<Conjecture> conjectures, std::size_t min_touch = 0);

struct MorganResult {
  std::vector<Conjecture> kept;
  // Same conclusion, hypotheses with equal counts but different true sets:
  // neither is removed. Pairs of rendered statements.
  std::vector<std::pair<std::string, std::string>> incomparable;
};

// Removes a conjecture when another one has the same conclusion and a
// hypothesis satisfied by strictly more rows of `table`.
MorganResult morgan(const std::vector<Conjecture>& conjectures, const KnowledgeTable& table);

// Both expect touch-sorted input and throw std::invalid_argument when empty.
// weak: keeps the first, every equality, anything whose sharps contain the
// sharps of a kept conjecture, and anything adding a new sharp graph.
std::vector<Conjecture> weak_smokey(const std::vector<Conjecture>& conjectures);
// strong: same without the new-sharp-graph clause.
std::vector<Conjecture> strong_smokey(const std::vector<Conjecture>& conjectures);

enum class SmokeyMode { weak, strong };
std::string_view to_string(SmokeyMode mode);
SmokeyMode parse_smokey_mode(std::string_view text);

// Conjectures with no counterexample in `table`, order kept.
std::vector<Conjecture> filter_false(const std::vector<Conjecture>& conjectures, const KnowledgeTable& table);

}  // namespace optimist
