#include "optimist/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

namespace optimist {

std::vector<Conjecture> hazel(std::vector<Conjecture> conjectures, std::size_t min_touch) {
  std::vector<Conjecture> out;
  for (auto& c : conjectures) {
    if (c.touch <= min_touch) continue;
    bool seen = std::any_of(out.begin(), out.end(), [&](const Conjecture& o) { return same_statement(o, c); });
    if (!seen) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const Conjecture& a, const Conjecture& b) { return a.touch > b.touch; });
  return out;
}

MorganResult morgan(const std::vector<Conjecture>& conjectures, const KnowledgeTable& table) {
  MorganResult result;
  std::vector<bool> alive(conjectures.size(), true);
  // Every original conjecture gets to eliminate others, even one that was
  // itself eliminated earlier.
  for (std::size_t i = 0; i < conjectures.size(); ++i) {
    const auto& one = conjectures[i];
    for (std::size_t j = 0; j < conjectures.size(); ++j) {
      if (!alive[j] || same_statement(one, conjectures[j])) continue;
      const auto& two = conjectures[j];
      if (!(one.conclusion == two.conclusion)) continue;
      if (more_general(one.hypothesis, two.hypothesis, table)) {
        alive[j] = false;
      } else if (i < j && table.count_true(one.hypothesis.property) == table.count_true(two.hypothesis.property) &&
                 table.filter_by_property(one.hypothesis.property).names !=
                     table.filter_by_property(two.hypothesis.property).names) {
        result.incomparable.emplace_back(render(one), render(two));
      }
    }
  }
  for (std::size_t i = 0; i < conjectures.size(); ++i) {
    if (alive[i]) result.kept.push_back(conjectures[i]);
  }
  return result;
}

namespace {

bool superset(const NameSet& a, const NameSet& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end(), NaturalLess{});
}

std::vector<Conjecture> smokey(const std::vector<Conjecture>& conjectures, bool weak) {
  if (conjectures.empty()) throw std::invalid_argument("smokey needs at least one conjecture");
  std::vector<Conjecture> kept{conjectures.front()};
  NameSet covered = conjectures.front().sharps;
  for (std::size_t i = 1; i < conjectures.size(); ++i) {
    const auto& c = conjectures[i];
    bool keep = c.is_equality() ||
                std::any_of(kept.begin(), kept.end(), [&](const Conjecture& k) { return superset(c.sharps, k.sharps); });
    if (!keep && weak) {
      keep = std::any_of(c.sharps.begin(), c.sharps.end(), [&](const std::string& s) { return !covered.count(s); });
    }
    if (keep) {
      kept.push_back(c);
      covered.insert(c.sharps.begin(), c.sharps.end());
    }
  }
  return kept;
}

}  // namespace

std::vector<Conjecture> weak_smokey(const std::vector<Conjecture>& conjectures) { return smokey(conjectures, true); }

std::vector<Conjecture> strong_smokey(const std::vector<Conjecture>& conjectures) {
  return smokey(conjectures, false);
}

std::string_view to_string(SmokeyMode mode) { return mode == SmokeyMode::weak ? "weak" : "strong"; }

SmokeyMode parse_smokey_mode(std::string_view text) {
  if (text == "weak") return SmokeyMode::weak;
  if (text == "strong") return SmokeyMode::strong;
  throw std::invalid_argument("smokey mode must be weak or strong, got " + std::string(text));
}

std::vector<Conjecture> filter_false(const std::vector<Conjecture>& conjectures, const KnowledgeTable& table) {
  std::vector<Conjecture> out;
  for (const auto& c : conjectures) {
    if (holds_on(c, table).valid) out.push_back(c);
  }
  return out;
}

}  // namespace optimist
