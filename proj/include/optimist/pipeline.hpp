#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optimist/bound_fit.hpp"
#include "optimist/conjecture.hpp"
#include "optimist/heuristics.hpp"
#include "optimist/knowledge_table.hpp"

namespace optimist {

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DisplayText = std::function<std::string(std::string_view property)>;

struct SweepOptions {
  FitOptions fit;
  DisplayText display;  // defaults to default_property_display
  unsigned threads = 1;
};

struct SweepStats {
  std::size_t problems = 0;      // fits attempted
  std::size_t empty = 0;         // hypothesis with no rows, skipped
  std::size_t infeasible = 0;    // no admissible bound pair
  std::vector<std::string> failures;     // combination + error text
  std::vector<std::string> diagnostics;  // fitter notes, prefixed by combination
};

struct ConjectureLists {
  std::vector<Conjecture> upper;
  std::vector<Conjecture> lower;
};

struct Sweep {
  ConjectureLists lists;
  SweepStats stats;
};

// Every unordered pair of distinct `numeric_columns` (neither equal to the
// target) times every boolean column, in declaration order. An equality fit
// goes to the upper list only.
Sweep make_all_linear_conjectures(const KnowledgeTable& table, const std::string& target,
                                  const std::vector<std::string>& numeric_columns,
                                  const std::vector<std::string>& boolean_columns, const SweepOptions& options = {});

struct PipelineOptions {
  SmokeyMode smokey = SmokeyMode::weak;
  std::size_t min_touch = 1;
  // Empty means every numeric / boolean column of the table.
  std::vector<std::string> features;
  std::vector<std::string> hypotheses;
  SweepOptions sweep;
};

struct PipelineReport {
  ConjectureLists lists;
  SweepStats sweep;
  std::size_t generated = 0;  // upper + lower before any filter
  std::vector<std::pair<std::string, std::string>> incomparable;
};

// make_all -> filter_false -> hazel -> morgan -> smokey -> drop statements
// equal to a known theorem.
PipelineReport run_pipeline(const KnowledgeTable& table, const std::string& target,
                            const std::vector<Conjecture>& known_theorems, const PipelineOptions& options = {});

}  // namespace optimist
