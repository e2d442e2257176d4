#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optimist/graph.hpp"
#include "optimist/rational.hpp"

namespace optimist {

inline constexpr int kDefaultBruteForceCeiling = 20;

// Raised when an exhaustive invariant is asked about a graph larger than the
// configured ceiling.
class CeilingError : public std::runtime_error {
 public:
  CeilingError(int order, int ceiling);
  int order() const { return order_; }
  int ceiling() const { return ceiling_; }

 private:
  int order_;
  int ceiling_;
};

// Exact invariants. The NP-hard ones use branch and bound on vertex bitmasks
// and refuse graphs above `ceiling` vertices (hard limit 64).
int independence_number(const Graph& g, int ceiling = kDefaultBruteForceCeiling);
int matching_number(const Graph& g, int ceiling = kDefaultBruteForceCeiling);
int min_maximal_matching_number(const Graph& g, int ceiling = kDefaultBruteForceCeiling);

struct DegreeStats {
  int order = 0;
  int minimum_degree = 0;
  int maximum_degree = 0;
};
DegreeStats degree_stats(const Graph& g);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

// connected, bipartite, tree, regular, connected_and_bipartite,
// connected_and_regular.
std::map<std::string, bool> boolean_properties(const Graph& g);

struct NumericInvariant {
  std::string name;
  std::function<Rational(const Graph&)> compute;
};

struct BooleanProperty {
  std::string name;
  // Noun phrase used after "If G is ", e.g. "a connected and bipartite graph".
  std::string display;
  std::function<bool(const Graph&)> compute;
};

// Named numeric invariants and boolean properties, in declaration order.
// Names are unique across both kinds.
class InvariantRegistry {
 public:
  InvariantRegistry() = default;
  explicit InvariantRegistry(int ceiling) : ceiling_(ceiling) {}

  // order, minimum_degree, maximum_degree, independence_number,
  // matching_number, min_maximal_matching_number; connected, bipartite, tree,
  // regular, connected_and_bipartite, connected_and_regular.
  static InvariantRegistry standard(int ceiling = kDefaultBruteForceCeiling);

  void add_numeric(std::string name, std::function<Rational(const Graph&)> compute);
  void add_boolean(std::string name, std::string display, std::function<bool(const Graph&)> compute);

  const std::vector<NumericInvariant>& numeric() const { return numeric_; }
  const std::vector<BooleanProperty>& boolean() const { return boolean_; }
  std::vector<std::string> numeric_names() const;
  std::vector<std::string> boolean_names() const;

  bool contains(std::string_view name) const;
  bool is_numeric(std::string_view name) const;
  bool is_boolean(std::string_view name) const;

  // Display phrase for a boolean property; falls back to the raw name.
  std::string display_text(std::string_view property) const;

  int ceiling() const { return ceiling_; }

 private:
  int ceiling_ = kDefaultBruteForceCeiling;
  std::vector<NumericInvariant> numeric_;
  std::vector<BooleanProperty> boolean_;
};

// Display phrases of the built-in properties, usable without a registry.
std::string default_property_display(std::string_view property);

}  // namespace optimist
