#include "optimist/graph.hpp"

#include <algorithm>
#include "json.hpp"

namespace optimist {

Graph Graph::from_edge_list(int n, std::span<const Edge> edges) {
  if (n < 1) throw GraphError("graph must have at least one vertex");
  Graph g;
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside [0," + std::to_string(n) + ")");
    }
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end()) {
    throw GraphError("duplicate edge (" + std::to_string(dup->first) + "," +
                     std::to_string(dup->second) + ")");
  }
  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::uint64_t> Graph::neighbor_masks() const {
  if (order() > 64) throw GraphError("bitmask view needs at most 64 vertices");
  std::vector<std::uint64_t> masks(adjacency_.size(), 0);
  for (auto [u, v] : edges_) {
    masks[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    masks[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  return masks;
}

GraphFamily parse_graph_family(std::string_view name) {
  if (name == "complete") return GraphFamily::complete;
  if (name == "path") return GraphFamily::path;
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "star") return GraphFamily::star;
  throw GraphError("unknown graph family: " + std::string(name));
}

Graph named_graph(GraphFamily family, int n) {
  std::vector<Graph::Edge> edges;
  switch (family) {
    case GraphFamily::complete:
      if (n < 1) throw GraphError("complete graph needs n >= 1");
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
    case GraphFamily::path:
      if (n < 1) throw GraphError("path graph needs n >= 1");
      for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      break;
    case GraphFamily::cycle:
      if (n < 3) throw GraphError("cycle graph needs n >= 3");
      for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      edges.emplace_back(0, n - 1);
      break;
    case GraphFamily::star:
      if (n < 1) throw GraphError("star graph needs n >= 1");
      for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
  }
  return Graph::from_edge_list(n, edges);
}

namespace {
constexpr int kGraph6Bias = 63;
constexpr int kGraph6MaxShortOrder = 62;
}  // namespace

Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw GraphError("graph6: empty input");
  for (char c : text) {
    if (c < kGraph6Bias || c > 126) {
      throw GraphError("graph6: character outside the printable range 63..126");
    }
  }
  int n = text[0] - kGraph6Bias;
  if (n > kGraph6MaxShortOrder) {
    throw GraphError("graph6: unsupported length header (only n <= 62 is supported)");
  }
  if (n < 1) throw GraphError("graph6: graph must have at least one vertex");
  std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::size_t expected = 1 + (bits + 5) / 6;
  if (text.size() != expected) {
    throw GraphError("graph6: expected " + std::to_string(expected) + " characters for n=" +
                     std::to_string(n) + ", got " + std::to_string(text.size()));
  }
  auto bit_at = [&](std::size_t k) {
    int chunk = text[1 + k / 6] - kGraph6Bias;
    return (chunk >> (5 - static_cast<int>(k % 6))) & 1;
  };
  std::vector<Graph::Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (bit_at(k)) edges.emplace_back(i, j);
    }
  }
  for (std::size_t pad = bits; pad < (expected - 1) * 6; ++pad) {
    if (bit_at(pad)) throw GraphError("graph6: nonzero padding bits");
  }
  return Graph::from_edge_list(n, edges);
}

std::string encode_graph6(const Graph& g) {
  int n = g.order();
  if (n > kGraph6MaxShortOrder) throw GraphError("graph6: only n <= 62 is supported");
  std::string out(1, static_cast<char>(n + kGraph6Bias));
  int chunk = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + kGraph6Bias));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + kGraph6Bias));
  return out;
}

Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw GraphError("edge-list JSON needs an integer field \"n\"");
  }
  std::vector<Graph::Edge> edges;
  if (j.contains("edges")) {
    const auto& list = j.at("edges");
    if (!list.is_array()) throw GraphError("\"edges\" must be an array");
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw GraphError("each edge must be a pair of integers");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  return Graph::from_edge_list(j.at("n").get<int>(), edges);
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_payload(const nlohmann::json& j) {
  if (!j.is_object()) throw GraphError("graph payload must be an object");
  if (j.contains("graph6")) {
    if (!j.at("graph6").is_string()) throw GraphError("graph6 must be a string");
    return parse_graph6(j.at("graph6").get<std::string>());
  }
  if (j.contains("n")) return graph_from_json(j);
  throw GraphError("graph payload needs \"graph6\" or \"n\" and \"edges\"");
}

}  // namespace optimist
