#include "optimist/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace optimist {

CeilingError::CeilingError(int order, int ceiling)
    : std::runtime_error("graph has " + std::to_string(order) +
                         " vertices, above the brute-force ceiling of " + std::to_string(ceiling)),
      order_(order),
      ceiling_(ceiling) {}

namespace {

using Mask = std::uint64_t;

constexpr int kHardCeiling = 64;

void check_ceiling(const Graph& g, int ceiling) {
  int limit = std::min(ceiling, kHardCeiling);
  if (g.order() > limit) throw CeilingError(g.order(), limit);
}

Mask bit(int v) { return Mask{1} << v; }
int lowest(Mask m) { return std::countr_zero(m); }
int count(Mask m) { return std::popcount(m); }

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : nbrs_(g.neighbor_masks()) {}

  int run(Mask all) {
    best_ = 0;
    branch(all, 0);
    return best_;
  }

 private:
  void branch(Mask candidates, int size) {
    if (candidates == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + count(candidates) <= best_) return;
    // Branch on a vertex of maximum degree inside the candidate set; a vertex
    // of degree <= 1 can always be taken greedily.
    int pick = -1;
    int pick_degree = -1;
    for (Mask m = candidates; m; m &= m - 1) {
      int v = lowest(m);
      int d = count(nbrs_[static_cast<std::size_t>(v)] & candidates);
      if (d <= 1) {
        branch(candidates & ~nbrs_[static_cast<std::size_t>(v)] & ~bit(v), size + 1);
        return;
      }
      if (d > pick_degree) {
        pick = v;
        pick_degree = d;
      }
    }
    Mask closed = nbrs_[static_cast<std::size_t>(pick)] | bit(pick);
    branch(candidates & ~closed, size + 1);
    branch(candidates & ~bit(pick), size);
  }

  std::vector<Mask> nbrs_;
  int best_ = 0;
};

class MatchingSearch {
 public:
  explicit MatchingSearch(const Graph& g) : nbrs_(g.neighbor_masks()) {}

  // Maximum matching inside the vertex set `free_vertices`.
  int run(Mask free_vertices) {
    // Drop isolated vertices first; they never contribute.
    while (free_vertices) {
      int v = lowest(free_vertices);
      Mask partners = nbrs_[static_cast<std::size_t>(v)] & free_vertices;
      if (partners != 0) break;
      free_vertices &= ~bit(v);
    }
    if (count(free_vertices) < 2) return 0;
    if (auto it = memo_.find(free_vertices); it != memo_.end()) return it->second;

    int v = lowest(free_vertices);
    Mask rest = free_vertices & ~bit(v);
    int best = run(rest);
    for (Mask m = nbrs_[static_cast<std::size_t>(v)] & rest; m; m &= m - 1) {
      if (best == count(free_vertices) / 2) break;
      int u = lowest(m);
      best = std::max(best, 1 + run(rest & ~bit(u)));
    }
    memo_.emplace(free_vertices, best);
    return best;
  }

 private:
  std::vector<Mask> nbrs_;
  std::unordered_map<Mask, int> memo_;
};

// Minimum maximal matching (equivalently minimum edge dominating set) by
// branching on an undominated edge: one of its endpoints must end up matched.
class MinimalMaximalMatchingSearch {
 public:
  explicit MinimalMaximalMatchingSearch(const Graph& g) : nbrs_(g.neighbor_masks()), n_(g.order()) {}

  int run() {
    best_ = n_;  // any maximal matching has at most n/2 edges
    branch(0, 0, 0);
    return best_;
  }

 private:
  // Lower bound: disjoint undominated edges need distinct matching edges,
  // except that one matching edge may dominate two of them.
  int lower_bound(Mask matched) const {
    Mask used = matched;
    int disjoint = 0;
    for (int u = 0; u < n_; ++u) {
      if (used & bit(u)) continue;
      Mask free_nbrs = nbrs_[static_cast<std::size_t>(u)] & ~used;
      if (free_nbrs == 0) continue;
      int v = lowest(free_nbrs);
      used |= bit(u) | bit(v);
      ++disjoint;
    }
    return (disjoint + 1) / 2;
  }

  void branch(Mask matched, Mask forbidden, int size) {
    if (size >= best_) return;
    int u = -1;
    Mask partners = 0;
    bool forced = false;
    bool undominated = false;
    for (int v = 0; v < n_; ++v) {
      if (matched & bit(v)) continue;
      Mask f = nbrs_[static_cast<std::size_t>(v)] & ~matched;
      if (f == 0) continue;
      undominated = true;
      if (forbidden & bit(v)) {
        if (f & forbidden) return;  // an edge nobody may dominate
        continue;
      }
      // A vertex next to a forbidden one has to be matched.
      bool must_match = (f & forbidden) != 0;
      if (u < 0 || (must_match && !forced)) {
        u = v;
        partners = f & ~forbidden;
        forced = must_match;
      }
    }
    if (!undominated) {
      best_ = size;
      return;
    }
    if (u < 0 || size + lower_bound(matched) >= best_) return;

    for (Mask m = partners; m; m &= m - 1) {
      int x = lowest(m);
      branch(matched | bit(u) | bit(x), forbidden, size + 1);
    }
    if (!forced) branch(matched, forbidden | bit(u), size);
  }

  std::vector<Mask> nbrs_;
  int n_;
  int best_ = 0;
};

Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (bit(n) - 1); }

}  // namespace

int independence_number(const Graph& g, int ceiling) {
  check_ceiling(g, ceiling);
  return IndependentSetSearch(g).run(full_mask(g.order()));
}

int matching_number(const Graph& g, int ceiling) {
  check_ceiling(g, ceiling);
  return MatchingSearch(g).run(full_mask(g.order()));
}

int min_maximal_matching_number(const Graph& g, int ceiling) {
  check_ceiling(g, ceiling);
  if (g.size() == 0) return 0;
  return MinimalMaximalMatchingSearch(g).run();
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats stats{g.order(), g.degree(0), g.degree(0)};
  for (int v = 1; v < g.order(); ++v) {
    stats.minimum_degree = std::min(stats.minimum_degree, g.degree(v));
    stats.maximum_degree = std::max(stats.maximum_degree, g.degree(v));
  }
  return stats;
}

bool is_connected(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == g.order();
}

bool is_bipartite(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.order()), -1);
  for (int start = 0; start < g.order(); ++start) {
    if (color[static_cast<std::size_t>(start)] >= 0) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v)) {
        auto& cu = color[static_cast<std::size_t>(u)];
        int cv = color[static_cast<std::size_t>(v)];
        if (cu < 0) {
          cu = 1 - cv;
          stack.push_back(u);
        } else if (cu == cv) {
          return false;
        }
      }
    }
  }
  return true;
}

std::map<std::string, bool> boolean_properties(const Graph& g) {
  bool connected = is_connected(g);
  bool bipartite = is_bipartite(g);
  auto stats = degree_stats(g);
  bool tree = connected && g.size() + 1 == static_cast<std::size_t>(g.order());
  bool regular = stats.minimum_degree == stats.maximum_degree;
  return {
      {"connected", connected},
      {"bipartite", bipartite},
      {"tree", tree},
      {"regular", regular},
      {"connected_and_bipartite", connected && bipartite},
      {"connected_and_regular", connected && regular},
  };
}

std::string default_property_display(std::string_view property) {
  static const std::map<std::string, std::string, std::less<>> kDisplay = {
      {"connected", "a connected graph"},
      {"bipartite", "a bipartite graph"},
      {"tree", "a tree"},
      {"regular", "a regular graph"},
      {"connected_and_bipartite", "a connected and bipartite graph"},
      {"connected_and_regular", "a connected and regular graph"},
  };
  if (auto it = kDisplay.find(property); it != kDisplay.end()) return it->second;
  return std::string(property);
}

InvariantRegistry InvariantRegistry::standard(int ceiling) {
  InvariantRegistry r(ceiling);
  r.add_numeric("order", [](const Graph& g) { return Rational(g.order()); });
  r.add_numeric("minimum_degree", [](const Graph& g) { return Rational(degree_stats(g).minimum_degree); });
  r.add_numeric("maximum_degree", [](const Graph& g) { return Rational(degree_stats(g).maximum_degree); });
  r.add_numeric("independence_number",
                [ceiling](const Graph& g) { return Rational(independence_number(g, ceiling)); });
  r.add_numeric("matching_number", [ceiling](const Graph& g) { return Rational(matching_number(g, ceiling)); });
  r.add_numeric("min_maximal_matching_number",
                [ceiling](const Graph& g) { return Rational(min_maximal_matching_number(g, ceiling)); });

  for (const char* name : {"connected", "bipartite", "tree", "regular", "connected_and_bipartite",
                           "connected_and_regular"}) {
    std::string key = name;
    r.add_boolean(key, default_property_display(key),
                  [key](const Graph& g) { return boolean_properties(g).at(key); });
  }
  return r;
}

void InvariantRegistry::add_numeric(std::string name, std::function<Rational(const Graph&)> compute) {
  if (contains(name)) throw std::invalid_argument("duplicate invariant name: " + name);
  numeric_.push_back({std::move(name), std::move(compute)});
}

void InvariantRegistry::add_boolean(std::string name, std::string display,
                                    std::function<bool(const Graph&)> compute) {
  if (contains(name)) throw std::invalid_argument("duplicate invariant name: " + name);
  boolean_.push_back({std::move(name), std::move(display), std::move(compute)});
}

std::vector<std::string> InvariantRegistry::numeric_names() const {
  std::vector<std::string> out;
  for (const auto& inv : numeric_) out.push_back(inv.name);
  return out;
}

std::vector<std::string> InvariantRegistry::boolean_names() const {
  std::vector<std::string> out;
  for (const auto& prop : boolean_) out.push_back(prop.name);
  return out;
}

bool InvariantRegistry::is_numeric(std::string_view name) const {
  return std::any_of(numeric_.begin(), numeric_.end(), [&](const auto& inv) { return inv.name == name; });
}

bool InvariantRegistry::is_boolean(std::string_view name) const {
  return std::any_of(boolean_.begin(), boolean_.end(), [&](const auto& p) { return p.name == name; });
}

bool InvariantRegistry::contains(std::string_view name) const { return is_numeric(name) || is_boolean(name); }

std::string InvariantRegistry::display_text(std::string_view property) const {
  for (const auto& p : boolean_) {
    if (p.name == property) return p.display;
  }
  return default_property_display(property);
}

}  // namespace optimist
