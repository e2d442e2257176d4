#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "optimist/knowledge_table.hpp"
#include "optimist/milp.hpp"
#include "optimist/names.hpp"
#include "optimist/rational.hpp"

namespace optimist {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitRow {
  std::string name;
  std::vector<Rational> x;  // feature values, in problem feature order
  Rational y;
};

// One (target, feature tuple, hypothesis) combination over the rows where the
// hypothesis holds.
struct BoundFitProblem {
  std::string target;
  std::vector<std::string> features;
  std::string hypothesis;
  std::vector<FitRow> rows;
  Rational big_m = 1000;
  Rational weight_box = 4;     // weights in [-weight_box, weight_box]
  Rational intercept_box = 3;  // intercept in [-intercept_box, intercept_box]

  static BoundFitProblem from_table(const KnowledgeTable& table, const std::string& target,
                                    const std::vector<std::string>& features, const std::string& hypothesis);

  // Throws FitError: target among features, repeated feature, no rows,
  // ragged rows, non-positive M or boxes.
  void validate() const;
};

struct LinearBound {
  std::vector<Rational> weights;
  Rational intercept;

  friend bool operator==(const LinearBound&, const LinearBound&) = default;
};

Rational evaluate_bound(const LinearBound& bound, std::span<const Rational> x);
Rational evaluate_bound(std::span<const Rational> weights, const Rational& intercept, std::span<const Rational> x);

// Same, reading the features of one table row by column name. Throws
// TableError for an unknown column.
Rational evaluate_bound(const LinearBound& bound, const std::vector<std::string>& features,
                        const KnowledgeTable& table, std::size_t row);

// Per distinct feature tuple, the first row (table order) with the largest
// target value goes to `upper` and the first with the smallest to `lower`.
// Tuples appear in order of first occurrence.
struct ExtremaRows {
  std::vector<FitRow> upper;
  std::vector<FitRow> lower;
};
ExtremaRows preprocess_extrema(std::span<const FitRow> rows);

// The joint equality-maximizing program: w_upper1.., b_upper, z_upper{i},
// w_lower1.., b_lower, z_lower{i}, objective sum of all z.
milp::Model build_fit_model(const BoundFitProblem& problem, const ExtremaRows& extrema, const Rational& big_m);

// Smallest M that cannot cut off a feasible point: max over rows of
// box_w * sum|X| + box_b + |Y|.
Rational big_m_floor(const BoundFitProblem& problem);

enum class FitStatus { ok, infeasible, node_limit };

const char* to_string(FitStatus status);

enum class FitBackend {
  // Enumerates the vertices of each side's feasible polytope and keeps the one
  // with the most tight rows; exact and fast for k <= 3.
  vertex_enumeration,
  // Generic exact branch and bound on the joint program from build_fit_model.
  branch_and_bound,
};

struct FitOptions {
  FitBackend backend = FitBackend::vertex_enumeration;
  long max_denominator = 10;
  long fallback_denominator = 100;
  milp::SolveOptions milp;
};

struct BoundFitResult {
  FitStatus status = FitStatus::infeasible;
  std::optional<LinearBound> upper;
  std::optional<LinearBound> lower;
  bool is_equality = false;
  std::size_t touch_upper = 0;
  std::size_t touch_lower = 0;
  NameSet sharps_upper;
  NameSet sharps_lower;
  // Tight extrema rows in the optimal program, before rationalization.
  std::size_t objective_upper = 0;
  std::size_t objective_lower = 0;
  Rational big_m_used;
  std::vector<std::string> diagnostics;
};

// Infeasible (either side has no admissible bound) yields status infeasible
// and no bounds.
BoundFitResult solve_bound_fit(const BoundFitProblem& problem, const FitOptions& options = {});

}  // namespace optimist
