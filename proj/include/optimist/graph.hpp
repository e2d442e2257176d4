#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace optimist {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  // Edges are normalized to (min, max) and sorted. Throws GraphError on an
  // out-of-range endpoint, a self-loop or a repeated edge.
  static Graph from_edge_list(int n, std::span<const Edge> edges);
  static Graph from_edge_list(int n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  int order() const { return static_cast<int>(adjacency_.size()); }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool adjacent(int u, int v) const;

  // Neighborhood bitmasks; requires order() <= 64.
  std::vector<std::uint64_t> neighbor_masks() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

enum class GraphFamily { complete, path, cycle, star };

GraphFamily parse_graph_family(std::string_view name);

// K_n, P_n, C_n (n >= 3) or the star K_{1,n-1} centred at vertex 0.
Graph named_graph(GraphFamily family, int n);

// graph6 short form (1 <= n <= 62). No ">>graph6<<" header.
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

// {"n": int, "edges": [[u, v], ...]}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
// Upload form: {"graph6": "..."} or the edge-list object above.
Graph graph_from_payload(const nlohmann::json& j);

}  // namespace optimist
