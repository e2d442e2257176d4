#pragma once

#include "optimist/graph.hpp"

// Deliberately plain enumerators used as oracles for the exact invariants.
namespace optimist::testing {

// Largest independent vertex subset, all 2^n subsets checked.
int naive_independence_number(const Graph& g);

struct NaiveMatchings {
  int maximum = 0;          // largest matching
  int minimum_maximal = 0;  // smallest matching no edge can extend
};

// All 2^m edge subsets checked.
NaiveMatchings naive_matchings(const Graph& g);

}  // namespace optimist::testing
