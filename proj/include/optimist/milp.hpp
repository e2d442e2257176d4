#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "optimist/rational.hpp"

// A small exact mixed-integer linear programming toolkit: model container,
// LP-format export, a two-phase simplex over exact rationals and a
// depth-first branch and bound on top of it.
namespace optimist::milp {

enum class VarKind { continuous, binary };
enum class Sense { le, ge, eq };

struct Term {
  std::size_t var;
  Rational coef;
};

struct Variable {
  std::string name;
  Rational lower;
  std::optional<Rational> upper;  // nullopt = +infinity
  VarKind kind = VarKind::continuous;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::le;
  Rational rhs;
};

class Model {
 public:
  explicit Model(std::string name = "model") : name_(std::move(name)) {}

  std::size_t add_continuous(std::string name, Rational lower, std::optional<Rational> upper);
  std::size_t add_binary(std::string name);
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, Rational rhs);
  void set_objective(std::vector<Term> terms, bool maximize = true);

  const std::string& name() const { return name_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const std::vector<Term>& objective() const { return objective_; }
  bool maximize() const { return maximize_; }

  std::optional<std::size_t> find_variable(const std::string& name) const;

  // CPLEX LP text. Non-integral coefficients are written as decimals, so the
  // dump is for inspection; the solver always works on the exact model.
  std::string to_lp_text() const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::vector<Term> objective_;
  bool maximize_ = true;
};

enum class Status { optimal, infeasible, unbounded, node_limit };

const char* to_string(Status status);

struct Solution {
  Status status = Status::infeasible;
  std::vector<Rational> values;
  Rational objective;
  std::size_t nodes = 0;
};

struct SolveOptions {
  std::size_t node_limit = 1'000'000;
  // Split the model into independent blocks (no shared constraint) and solve
  // them one at a time; optimal objectives add up.
  bool decompose = true;
};

// Exact optimum of the LP relaxation with the integrality marks ignored.
Solution solve_relaxation(const Model& model);

// Exact branch and bound. Among equally good integer solutions the first one
// reached by the depth-first search (up-branch first) is kept.
Solution solve(const Model& model, const SolveOptions& options = {});

}  // namespace optimist::milp
