#include "naive.hpp"

#include <algorithm>
#include <vector>

namespace optimist::testing {

int naive_independence_number(const Graph& g) {
  const int n = g.order();
  int best = 0;
  for (unsigned long s = 0; s < (1ul << n); ++s) {
    bool independent = true;
    for (const auto& [u, v] : g.edges()) {
      if ((s >> u & 1) && (s >> v & 1)) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcountl(s));
  }
  return best;
}

NaiveMatchings naive_matchings(const Graph& g) {
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  NaiveMatchings r{0, static_cast<int>(m)};
  if (m == 0) {
    r.minimum_maximal = 0;
    return r;
  }
  for (unsigned long s = 0; s < (1ul << m); ++s) {
    unsigned long covered = 0;
    bool matching = true;
    for (std::size_t e = 0; e < m && matching; ++e) {
      if (!(s >> e & 1)) continue;
      unsigned long ends = (1ul << edges[e].first) | (1ul << edges[e].second);
      if (covered & ends) matching = false;
      covered |= ends;
    }
    if (!matching) continue;
    int size = __builtin_popcountl(s);
    r.maximum = std::max(r.maximum, size);
    bool maximal = true;
    for (std::size_t e = 0; e < m && maximal; ++e) {
      if (!(covered >> edges[e].first & 1) && !(covered >> edges[e].second & 1)) maximal = false;
    }
    if (maximal) r.minimum_maximal = std::min(r.minimum_maximal, size);
  }
  return r;
}

}  // namespace optimist::testing
