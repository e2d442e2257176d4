#include "optimist/milp.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace optimist::milp {

std::size_t Model::add_continuous(std::string name, Rational lower, std::optional<Rational> upper) {
  vars_.push_back({std::move(name), std::move(lower), std::move(upper), VarKind::continuous});
  return vars_.size() - 1;
}

std::size_t Model::add_binary(std::string name) {
  vars_.push_back({std::move(name), Rational(0), Rational(1), VarKind::binary});
  return vars_.size() - 1;
}

void Model::add_constraint(std::string name, std::vector<Term> terms, Sense sense, Rational rhs) {
  for (const auto& t : terms) {
    if (t.var >= vars_.size()) throw std::out_of_range("constraint refers to an unknown variable");
  }
  cons_.push_back({std::move(name), std::move(terms), sense, std::move(rhs)});
}

void Model::set_objective(std::vector<Term> terms, bool maximize) {
  objective_ = std::move(terms);
  maximize_ = maximize;
}

std::optional<std::size_t> Model::find_variable(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string lp_number(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  std::ostringstream out;
  out << std::setprecision(17) << r.get_d();
  return out.str();
}

void write_terms(std::ostream& out, const Model& m, const std::vector<Term>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    Rational mag = abs(t.coef);
    if (first) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) out << lp_number(mag) << ' ';
    out << m.variables()[t.var].name;
    first = false;
  }
  if (first) out << "0";
}

}  // namespace

std::string Model::to_lp_text() const {
  std::ostringstream out;
  out << "\\ " << name_ << "\n";
  out << (maximize_ ? "Maximize" : "Minimize") << "\n obj: ";
  write_terms(out, *this, objective_);
  out << "\nSubject To\n";
  for (const auto& c : cons_) {
    out << ' ' << c.name << ": ";
    write_terms(out, *this, c.terms);
    out << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ") << lp_number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : vars_) {
    if (v.kind == VarKind::binary) continue;
    out << ' ' << lp_number(v.lower) << " <= " << v.name;
    if (v.upper) out << " <= " << lp_number(*v.upper);
    out << "\n";
  }
  bool any_binary = std::any_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::binary; });
  if (any_binary) {
    out << "Binaries\n";
    for (const auto& v : vars_) {
      if (v.kind == VarKind::binary) out << ' ' << v.name << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::node_limit: return "node_limit";
  }
  return "unknown";
}

namespace {

// Dense two-phase primal simplex with Bland's rule over exact rationals.
// Solves max c.x subject to rows and lower <= x <= upper.
class DenseSimplex {
 public:
  struct Row {
    std::vector<Rational> coef;  // dense, size n
    Sense sense;
    Rational rhs;
  };

  DenseSimplex(std::size_t n, std::vector<Rational> cost, std::vector<Row> rows, std::vector<Rational> lower,
               std::vector<std::optional<Rational>> upper)
      : n_(n), cost_(std::move(cost)), rows_(std::move(rows)), lower_(std::move(lower)), upper_(std::move(upper)) {}

  Solution run() {
    Solution sol;
    // Shift x = lower + y so that y >= 0; finite upper bounds become rows.
    std::vector<Row> rows;
    for (auto& r : rows_) {
      Rational shift = 0;
      for (std::size_t j = 0; j < n_; ++j) shift += r.coef[j] * lower_[j];
      rows.push_back({r.coef, r.sense, r.rhs - shift});
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (!upper_[j]) continue;
      Rational width = *upper_[j] - lower_[j];
      if (width < 0) {
        sol.status = Status::infeasible;
        return sol;
      }
      std::vector<Rational> coef(n_, Rational(0));
      coef[j] = 1;
      rows.push_back({std::move(coef), Sense::le, width});
    }
    // Normalize to rhs >= 0, turning ">= 0" rows into "<= 0" ones.
    for (auto& r : rows) {
      bool flip = r.rhs < 0 || (r.rhs == 0 && r.sense == Sense::ge);
      if (!flip) continue;
      for (auto& a : r.coef) a = -a;
      r.rhs = -r.rhs;
      if (r.sense == Sense::le) r.sense = Sense::ge;
      else if (r.sense == Sense::ge) r.sense = Sense::le;
    }

    const std::size_t m = rows.size();
    std::size_t slack_count = 0, artificial_count = 0;
    for (const auto& r : rows) {
      if (r.sense != Sense::eq) ++slack_count;
      if (r.sense != Sense::le) ++artificial_count;
    }
    width_ = n_ + slack_count + artificial_count;
    first_artificial_ = n_ + slack_count;
    table_.assign(m, std::vector<Rational>(width_ + 1, Rational(0)));
    basis_.assign(m, 0);
    std::size_t next_slack = n_, next_art = first_artificial_;
    for (std::size_t i = 0; i < m; ++i) {
      auto& t = table_[i];
      for (std::size_t j = 0; j < n_; ++j) t[j] = rows[i].coef[j];
      t[width_] = rows[i].rhs;
      if (rows[i].sense == Sense::le) {
        t[next_slack] = 1;
        basis_[i] = next_slack++;
      } else {
        if (rows[i].sense == Sense::ge) t[next_slack++] = -1;
        t[next_art] = 1;
        basis_[i] = next_art++;
      }
    }
    active_.assign(width_, true);

    if (artificial_count > 0) {
      std::vector<Rational> phase1(width_, Rational(0));
      for (std::size_t j = first_artificial_; j < width_; ++j) phase1[j] = -1;
      if (optimize(phase1) != Status::optimal) throw std::logic_error("phase I cannot be unbounded");
      if (objective_value(phase1) < 0) {
        sol.status = Status::infeasible;
        return sol;
      }
      drive_out_artificials();
      for (std::size_t j = first_artificial_; j < width_; ++j) active_[j] = false;
    }

    std::vector<Rational> phase2(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    if (optimize(phase2) == Status::unbounded) {
      sol.status = Status::unbounded;
      return sol;
    }
    sol.status = Status::optimal;
    sol.values.assign(n_, Rational(0));
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (basis_[i] < n_) sol.values[basis_[i]] = table_[i][width_];
    }
    sol.objective = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      sol.values[j] += lower_[j];
      sol.objective += cost_[j] * sol.values[j];
    }
    return sol;
  }

 private:
  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational z = 0;
    for (std::size_t i = 0; i < table_.size(); ++i) z += cost[basis_[i]] * table_[i][width_];
    return z;
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = table_[row];
    Rational p = pr[col];
    for (auto& v : pr) v /= p;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i == row) continue;
      Rational f = table_[i][col];
      if (f == 0) continue;
      auto& r = table_[i];
      for (std::size_t j = 0; j <= width_; ++j) {
        if (pr[j] != 0) r[j] -= f * pr[j];
      }
    }
    basis_[row] = col;
  }

  Status optimize(const std::vector<Rational>& cost) {
    while (true) {
      // Reduced costs d_j = c_j - sum_i c_B(i) * T[i][j]; Bland: first positive.
      std::size_t entering = width_;
      for (std::size_t j = 0; j < width_ && entering == width_; ++j) {
        if (!active_[j]) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < table_.size(); ++i) {
          if (table_[i][j] != 0) d -= cost[basis_[i]] * table_[i][j];
        }
        if (d > 0) entering = j;
      }
      if (entering == width_) return Status::optimal;

      std::size_t leaving = table_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        const auto& a = table_[i][entering];
        if (a <= 0) continue;
        Rational ratio = table_[i][width_] / a;
        if (leaving == table_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == table_.size()) return Status::unbounded;
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < table_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::size_t col = width_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (table_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == width_) {
        // Redundant row.
        table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
  }

  std::size_t n_;
  std::vector<Rational> cost_;
  std::vector<Row> rows_;
  std::vector<Rational> lower_;
  std::vector<std::optional<Rational>> upper_;

  std::size_t width_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<Rational>> table_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

Solution solve_lp(const Model& model, const std::vector<Rational>& lower,
                  const std::vector<std::optional<Rational>>& upper) {
  const std::size_t n = model.variables().size();
  std::vector<Rational> cost(n, Rational(0));
  for (const auto& t : model.objective()) cost[t.var] += model.maximize() ? t.coef : Rational(-t.coef);
  std::vector<DenseSimplex::Row> rows;
  for (const auto& c : model.constraints()) {
    std::vector<Rational> coef(n, Rational(0));
    for (const auto& t : c.terms) coef[t.var] += t.coef;
    rows.push_back({std::move(coef), c.sense, c.rhs});
  }
  Solution sol = DenseSimplex(n, std::move(cost), std::move(rows), lower, upper).run();
  if (sol.status == Status::optimal && !model.maximize()) sol.objective = -sol.objective;
  return sol;
}

bool objective_is_integral(const Model& model) {
  for (const auto& t : model.objective()) {
    if (model.variables()[t.var].kind != VarKind::binary || !is_integer(t.coef)) return false;
  }
  return true;
}

Rational floor_rational(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

Solution branch_and_bound(const Model& model, const SolveOptions& options) {
  const std::size_t n = model.variables().size();
  struct Node {
    std::vector<Rational> lower;
    std::vector<std::optional<Rational>> upper;
  };
  Node root;
  for (const auto& v : model.variables()) {
    root.lower.push_back(v.lower);
    root.upper.push_back(v.upper);
  }
  // Work in maximization sense internally.
  const bool maximize = model.maximize();
  auto better = [&](const Rational& a, const Rational& b) { return maximize ? a > b : a < b; };
  const bool integral = objective_is_integral(model);

  Solution incumbent;
  incumbent.status = Status::infeasible;
  std::vector<Node> stack{std::move(root)};
  std::size_t nodes = 0;
  bool saw_unbounded = false;
  while (!stack.empty()) {
    if (nodes >= options.node_limit) {
      incumbent.nodes = nodes;
      if (incumbent.status != Status::optimal) incumbent.status = Status::node_limit;
      return incumbent;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++nodes;
    Solution relax = solve_lp(model, node.lower, node.upper);
    if (relax.status == Status::infeasible) continue;
    if (relax.status == Status::unbounded) {
      saw_unbounded = true;
      continue;
    }
    if (incumbent.status == Status::optimal) {
      Rational bound = relax.objective;
      if (integral) bound = maximize ? floor_rational(bound) : -floor_rational(-bound);
      if (!better(bound, incumbent.objective)) continue;
    }
    std::size_t branch_var = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (model.variables()[j].kind == VarKind::binary && !is_integer(relax.values[j])) {
        branch_var = j;
        break;
      }
    }
    if (branch_var == n) {
      if (incumbent.status != Status::optimal || better(relax.objective, incumbent.objective)) {
        incumbent = relax;
        incumbent.status = Status::optimal;
      }
      continue;
    }
    Rational down = floor_rational(relax.values[branch_var]);
    Node zero = node;
    zero.upper[branch_var] = down;
    Node one = std::move(node);
    one.lower[branch_var] = down + 1;
    stack.push_back(std::move(zero));
    stack.push_back(std::move(one));  // explored first
  }
  incumbent.nodes = nodes;
  if (incumbent.status != Status::optimal && saw_unbounded) incumbent.status = Status::unbounded;
  return incumbent;
}

// Connected components of the variable/constraint incidence structure.
std::vector<std::vector<std::size_t>> components(const Model& model) {
  const std::size_t n = model.variables().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : model.constraints()) {
    for (std::size_t i = 1; i < c.terms.size(); ++i) {
      auto a = find(c.terms[0].var), b = find(c.terms[i].var);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto r = find(v);
    if (group_of[r] == n) {
      group_of[r] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[r]].push_back(v);
  }
  return groups;
}

}  // namespace

Solution solve_relaxation(const Model& model) {
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;
  for (const auto& v : model.variables()) {
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  return solve_lp(model, lower, upper);
}

Solution solve(const Model& model, const SolveOptions& options) {
  if (!options.decompose) return branch_and_bound(model, options);
  auto groups = components(model);
  if (groups.size() <= 1) return branch_and_bound(model, options);

  const std::size_t n = model.variables().size();
  Solution total;
  total.status = Status::optimal;
  total.values.assign(n, Rational(0));
  total.objective = 0;
  for (const auto& group : groups) {
    std::vector<std::size_t> local(n, n);
    Model sub(model.name());
    for (std::size_t v : group) {
      const auto& var = model.variables()[v];
      local[v] = var.kind == VarKind::binary ? sub.add_binary(var.name)
                                             : sub.add_continuous(var.name, var.lower, var.upper);
    }
    for (const auto& c : model.constraints()) {
      if (c.terms.empty() || local[c.terms[0].var] == n) continue;
      std::vector<Term> terms;
      for (const auto& t : c.terms) terms.push_back({local[t.var], t.coef});
      sub.add_constraint(c.name, std::move(terms), c.sense, c.rhs);
    }
    std::vector<Term> obj;
    for (const auto& t : model.objective()) {
      if (local[t.var] != n) obj.push_back({local[t.var], t.coef});
    }
    sub.set_objective(std::move(obj), model.maximize());
    Solution part = branch_and_bound(sub, options);
    total.nodes += part.nodes;
    if (part.status != Status::optimal) {
      total.status = part.status;
      total.values.clear();
      return total;
    }
    for (std::size_t v : group) total.values[v] = part.values[local[v]];
    total.objective += part.objective;
  }
  // Constraints with no terms still have to hold.
  for (const auto& c : model.constraints()) {
    if (!c.terms.empty()) continue;
    bool ok = c.sense == Sense::le ? 0 <= c.rhs : c.sense == Sense::ge ? 0 >= c.rhs : c.rhs == 0;
    if (!ok) {
      total.status = Status::infeasible;
      total.values.clear();
      return total;
    }
  }
  return total;
}

}  // namespace optimist::milp
