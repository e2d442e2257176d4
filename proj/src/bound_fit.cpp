#include "optimist/bound_fit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace optimist {

BoundFitProblem BoundFitProblem::from_table(const KnowledgeTable& table, const std::string& target,
                                            const std::vector<std::string>& features,
                                            const std::string& hypothesis) {
  BoundFitProblem p;
  p.target = target;
  p.features = features;
  p.hypothesis = hypothesis;
  std::size_t y_col = table.numeric_index(target);
  std::vector<std::size_t> x_cols;
  for (const auto& f : features) x_cols.push_back(table.numeric_index(f));
  for (std::size_t i : table.filter_by_property(hypothesis).indices) {
    const auto& row = table.rows()[i];
    FitRow fr{row.name, {}, row.numeric[y_col]};
    for (std::size_t c : x_cols) fr.x.push_back(row.numeric[c]);
    p.rows.push_back(std::move(fr));
  }
  return p;
}

void BoundFitProblem::validate() const {
  if (features.empty()) throw FitError("at least one feature is required");
  std::set<std::string> seen;
  for (const auto& f : features) {
    if (f == target) throw FitError("target " + target + " cannot also be a feature");
    if (!seen.insert(f).second) throw FitError("feature listed twice: " + f);
  }
  if (rows.empty()) throw FitError("no rows satisfy " + hypothesis);
  for (const auto& r : rows) {
    if (r.x.size() != features.size()) throw FitError("row " + r.name + " has the wrong number of features");
  }
  if (big_m <= 0) throw FitError("big M must be positive");
  if (weight_box <= 0 || intercept_box <= 0) throw FitError("coefficient boxes must be positive");
}

Rational evaluate_bound(std::span<const Rational> weights, const Rational& intercept, std::span<const Rational> x) {
  if (weights.size() != x.size()) throw FitError("weight and feature counts differ");
  Rational v = intercept;
  for (std::size_t j = 0; j < x.size(); ++j) v += weights[j] * x[j];
  return v;
}

Rational evaluate_bound(const LinearBound& bound, std::span<const Rational> x) {
  return evaluate_bound(bound.weights, bound.intercept, x);
}

Rational evaluate_bound(const LinearBound& bound, const std::vector<std::string>& features,
                        const KnowledgeTable& table, std::size_t row) {
  std::vector<Rational> x;
  for (const auto& f : features) x.push_back(table.numeric_value(row, f));
  return evaluate_bound(bound, x);
}

ExtremaRows preprocess_extrema(std::span<const FitRow> rows) {
  std::map<std::vector<Rational>, std::size_t> slot;
  ExtremaRows out;
  for (const auto& r : rows) {
    auto [it, fresh] = slot.emplace(r.x, out.upper.size());
    if (fresh) {
      out.upper.push_back(r);
      out.lower.push_back(r);
      continue;
    }
    if (r.y > out.upper[it->second].y) out.upper[it->second] = r;
    if (r.y < out.lower[it->second].y) out.lower[it->second] = r;
  }
  return out;
}

Rational big_m_floor(const BoundFitProblem& problem) {
  Rational floor = 0;
  for (const auto& r : problem.rows) {
    Rational s = problem.intercept_box + abs(r.y);
    for (const auto& x : r.x) s += problem.weight_box * abs(x);
    floor = std::max(floor, s);
  }
  return floor;
}

milp::Model build_fit_model(const BoundFitProblem& problem, const ExtremaRows& extrema, const Rational& big_m) {
  using milp::Sense;
  using milp::Term;
  milp::Model model("bound_fit_" + problem.target + "_" + problem.hypothesis);
  const std::size_t k = problem.features.size();
  std::vector<Term> objective;

  auto add_side = [&](const std::string& side, const std::vector<FitRow>& rows, bool upper) {
    std::vector<std::size_t> w;
    for (std::size_t j = 0; j < k; ++j) {
      w.push_back(model.add_continuous("w_" + side + std::to_string(j + 1), -problem.weight_box, problem.weight_box));
    }
    std::size_t b = model.add_continuous("b_" + side, -problem.intercept_box, problem.intercept_box);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::size_t z = model.add_binary("z_" + side + std::to_string(i));
      objective.push_back({z, 1});
      std::string tag = side + std::to_string(i);
      // f_i = sum w X + b
      std::vector<Term> f;
      for (std::size_t j = 0; j < k; ++j) f.push_back({w[j], r.x[j]});
      f.push_back({b, 1});
      model.add_constraint("bound_" + tag, f, upper ? Sense::ge : Sense::le, r.y);

      std::vector<Term> aux;
      for (std::size_t j = 0; j < k; ++j) aux.push_back({w[j], r.x[j]});
      aux.push_back({b, -1});
      model.add_constraint("aux_" + tag, aux, Sense::ge, 0);

      // upper: f - Y <= M(1 - z)  ->  f + M z <= Y + M
      // lower: Y - f <= M(1 - z)  -> -f + M z <= M - Y
      std::vector<Term> tight;
      for (const auto& t : f) tight.push_back({t.var, upper ? t.coef : Rational(-t.coef)});
      tight.push_back({z, big_m});
      model.add_constraint("tight_" + tag, tight, Sense::le, upper ? Rational(r.y + big_m) : Rational(big_m - r.y));
    }
  };
  add_side("upper", extrema.upper, true);
  add_side("lower", extrema.lower, false);
  model.set_objective(std::move(objective), true);
  return model;
}

const char* to_string(FitStatus status) {
  switch (status) {
    case FitStatus::ok: return "ok";
    case FitStatus::infeasible: return "infeasible";
    case FitStatus::node_limit: return "node_limit";
  }
  return "unknown";
}

namespace {

// ---- vertex enumeration ----------------------------------------------------

// a . v >= c, with v = (w_1..w_k, b); integer coefficients.
struct IntConstraint {
  std::vector<mpz_class> a;
  mpz_class c;
  bool row = false;  // the bound inequality of an extrema row
};

IntConstraint scaled(const std::vector<Rational>& a, const Rational& c, bool row) {
  mpz_class l = c.get_den();
  for (const auto& v : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntConstraint out;
  out.row = row;
  for (const auto& v : a) out.a.push_back(mpz_class(v.get_num() * (l / v.get_den())));
  out.c = c.get_num() * (l / c.get_den());
  mpz_class g = abs(out.c);
  for (const auto& v : out.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : out.a) v /= g;
    out.c /= g;
  }
  return out;
}

std::vector<IntConstraint> side_constraints(const BoundFitProblem& p, const std::vector<FitRow>& rows, bool upper) {
  const std::size_t k = p.features.size();
  const std::size_t d = k + 1;
  std::vector<IntConstraint> cons;
  for (std::size_t j = 0; j < d; ++j) {
    const Rational& box = j < k ? p.weight_box : p.intercept_box;
    std::vector<Rational> e(d, Rational(0));
    e[j] = 1;
    cons.push_back(scaled(e, -box, false));
    e[j] = -1;
    cons.push_back(scaled(e, -box, false));
  }
  for (const auto& r : rows) {
    std::vector<Rational> a(r.x.begin(), r.x.end());
    a.push_back(1);
    Rational c = r.y;
    if (!upper) {
      for (auto& v : a) v = -v;
      c = -c;
    }
    cons.push_back(scaled(a, c, true));
    std::vector<Rational> aux(r.x.begin(), r.x.end());
    aux.push_back(-1);
    cons.push_back(scaled(aux, 0, false));
  }
  return cons;
}

struct Vertex {
  std::vector<Rational> v;
  std::size_t count = 0;
};

struct VertexKey {
  std::size_t count;
  bool representable;
  std::size_t nonzero_weights;
  Rational l1;
  std::vector<Rational> coords;
};

// True when `a` should replace `b`.
bool prefer(const VertexKey& a, const VertexKey& b) {
  if (a.count != b.count) return a.count > b.count;
  if (a.representable != b.representable) return a.representable;
  if (a.nonzero_weights != b.nonzero_weights) return a.nonzero_weights < b.nonzero_weights;
  if (a.l1 != b.l1) return a.l1 < b.l1;
  return a.coords < b.coords;
}

template <class T>
T det(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  T sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

template <class T>
T to_num(const mpz_class& z);
template <>
__int128 to_num<__int128>(const mpz_class& z) {
  return static_cast<__int128>(z.get_si());
}
template <>
mpz_class to_num<mpz_class>(const mpz_class& z) {
  return z;
}

mpz_class to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}
mpz_class to_mpz(const mpz_class& v) { return v; }

class VertexSearch {
 public:
  VertexSearch(std::size_t k, long max_denominator) : k_(k), d_(k + 1), max_den_(max_denominator) {}

  // Best vertex of {v : every constraint holds}, or nullopt when empty.
  std::optional<Vertex> run(const std::vector<IntConstraint>& cons) {
    bool small = d_ <= 3;
    long limit = d_ <= 3 ? (1L << 20) : (1L << 10);
    for (const auto& c : cons) {
      if (abs(c.c) > limit) small = false;
      for (const auto& a : c.a) {
        if (abs(a) > limit) small = false;
      }
    }
    if (d_ > 4) small = false;
    return small ? search<__int128>(cons) : search<mpz_class>(cons);
  }

 private:
  template <class T>
  std::optional<Vertex> search(const std::vector<IntConstraint>& cons) {
    const std::size_t n = cons.size();
    std::vector<std::vector<T>> a(n, std::vector<T>(d_));
    std::vector<T> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d_; ++j) a[i][j] = to_num<T>(cons[i].a[j]);
      c[i] = to_num<T>(cons[i].c);
    }
    // Candidate hyperplanes: every constraint boundary plus the coordinate
    // planes, so that among equally tight fits the search also sees the ones
    // with a zero weight or zero intercept. Duplicates are dropped.
    std::vector<std::vector<T>> pa;
    std::vector<T> pc;
    {
      std::set<std::vector<mpz_class>> seen;
      auto add = [&](const std::vector<mpz_class>& coef, const mpz_class& rhs) {
        std::vector<mpz_class> key(coef);
        key.push_back(rhs);
        auto first_nonzero = std::find_if(key.begin(), key.end(), [](const mpz_class& z) { return z != 0; });
        if (first_nonzero != key.end() && *first_nonzero < 0) {
          for (auto& z : key) z = -z;
        }
        if (!seen.insert(key).second) return;
        std::vector<T> row;
        for (const auto& z : coef) row.push_back(to_num<T>(z));
        pa.push_back(std::move(row));
        pc.push_back(to_num<T>(rhs));
      };
      for (const auto& con : cons) add(con.a, con.c);
      for (std::size_t j = 0; j < d_; ++j) {
        std::vector<mpz_class> e(d_, mpz_class(0));
        e[j] = 1;
        add(e, 0);
      }
    }

    std::optional<VertexKey> best;
    std::vector<std::size_t> pick(d_);
    std::vector<std::vector<T>> m(d_, std::vector<T>(d_));
    std::vector<T> num(d_);
    // Iterate over all d-subsets of planes in lexicographic order.
    const std::size_t p = pa.size();
    if (p < d_) return std::nullopt;
    for (std::size_t i = 0; i < d_; ++i) pick[i] = i;
    while (true) {
      for (std::size_t r = 0; r < d_; ++r) m[r] = pa[pick[r]];
      T den = det(m);
      if (den != 0) {
        for (std::size_t j = 0; j < d_; ++j) {
          auto mj = m;
          for (std::size_t r = 0; r < d_; ++r) mj[r][j] = pc[pick[r]];
          num[j] = det(mj);
        }
        if (den < 0) {
          den = -den;
          for (auto& x : num) x = -x;
        }
        bool feasible = true;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n && feasible; ++i) {
          T lhs = 0;
          for (std::size_t j = 0; j < d_; ++j) lhs += a[i][j] * num[j];
          T rhs = c[i] * den;
          if (lhs < rhs) feasible = false;
          else if (cons[i].row && lhs == rhs) ++count;
        }
        if (feasible && (!best || count >= best->count)) {
          VertexKey key = make_key(num, den, count);
          if (!best || prefer(key, *best)) best = std::move(key);
        }
      }
      // next combination
      std::size_t i = d_;
      while (i > 0 && pick[i - 1] == p - d_ + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < d_; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!best) return std::nullopt;
    return Vertex{best->coords, best->count};
  }

  template <class T>
  VertexKey make_key(const std::vector<T>& num, const T& den, std::size_t count) const {
    VertexKey key{count, true, 0, 0, {}};
    mpz_class dz = to_mpz(den);
    for (std::size_t j = 0; j < d_; ++j) {
      Rational v(to_mpz(num[j]), dz);
      v.canonicalize();
      if (v.get_den() > max_den_) key.representable = false;
      if (j < k_ && v != 0) ++key.nonzero_weights;
      key.l1 += abs(v);
      key.coords.push_back(std::move(v));
    }
    return key;
  }

  std::size_t k_;
  std::size_t d_;
  long max_den_;
};

struct SideSolution {
  LinearBound raw;
  std::size_t tight = 0;
};

std::optional<SideSolution> vertex_side(const BoundFitProblem& p, const std::vector<FitRow>& rows, bool upper,
                                        long max_den) {
  auto vertex = VertexSearch(p.features.size(), max_den).run(side_constraints(p, rows, upper));
  if (!vertex) return std::nullopt;
  SideSolution s;
  s.raw.weights.assign(vertex->v.begin(), vertex->v.end() - 1);
  s.raw.intercept = vertex->v.back();
  s.tight = vertex->count;
  return s;
}

bool sound(const LinearBound& b, const std::vector<FitRow>& rows, bool upper) {
  for (const auto& r : rows) {
    Rational f = evaluate_bound(b, r.x);
    if (upper ? r.y > f : r.y < f) return false;
  }
  return true;
}

LinearBound rationalize(const LinearBound& raw, long max_den) {
  LinearBound out;
  for (const auto& w : raw.weights) out.weights.push_back(limit_denominator(w, max_den));
  out.intercept = limit_denominator(raw.intercept, max_den);
  return out;
}

std::optional<LinearBound> finish_side(const LinearBound& raw, const BoundFitProblem& p, bool upper,
                                       const FitOptions& options, std::vector<std::string>& diagnostics) {
  const char* side = upper ? "upper" : "lower";
  LinearBound b = rationalize(raw, options.max_denominator);
  if (sound(b, p.rows, upper)) return b;
  LinearBound wide = rationalize(raw, options.fallback_denominator);
  if (sound(wide, p.rows, upper)) {
    diagnostics.push_back(std::string(side) + " bound needed denominators up to " +
                          std::to_string(options.fallback_denominator) + " to stay valid");
    return wide;
  }
  diagnostics.push_back(std::string(side) + " bound dropped: no valid rationalization");
  return std::nullopt;
}

NameSet tight_rows(const LinearBound& b, const std::vector<FitRow>& rows) {
  NameSet out;
  for (const auto& r : rows) {
    if (evaluate_bound(b, r.x) == r.y) out.insert(r.name);
  }
  return out;
}

}  // namespace

BoundFitResult solve_bound_fit(const BoundFitProblem& problem, const FitOptions& options) {
  problem.validate();
  BoundFitResult result;
  ExtremaRows extrema = preprocess_extrema(problem.rows);

  Rational floor = big_m_floor(problem);
  result.big_m_used = problem.big_m;
  if (problem.big_m <= floor) {
    result.big_m_used = 2 * floor + 1;
    result.diagnostics.push_back("big M " + to_string(problem.big_m) + " too small for this data; raised to " +
                                 to_string(result.big_m_used));
  }

  std::optional<SideSolution> up, low;
  if (options.backend == FitBackend::vertex_enumeration) {
    up = vertex_side(problem, extrema.upper, true, options.max_denominator);
    if (up) low = vertex_side(problem, extrema.lower, false, options.max_denominator);
    if (!up || !low) return result;
  } else {
    milp::Model model = build_fit_model(problem, extrema, result.big_m_used);
    milp::Solution sol = milp::solve(model, options.milp);
    if (sol.status == milp::Status::node_limit) {
      result.status = FitStatus::node_limit;
      result.diagnostics.push_back("branch and bound hit its node limit");
      return result;
    }
    if (sol.status != milp::Status::optimal) return result;
    auto read = [&](const std::string& side, std::size_t rows) {
      SideSolution s;
      for (std::size_t j = 0; j < problem.features.size(); ++j) {
        s.raw.weights.push_back(sol.values[*model.find_variable("w_" + side + std::to_string(j + 1))]);
      }
      s.raw.intercept = sol.values[*model.find_variable("b_" + side)];
      for (std::size_t i = 0; i < rows; ++i) {
        if (sol.values[*model.find_variable("z_" + side + std::to_string(i))] == 1) ++s.tight;
      }
      return s;
    };
    up = read("upper", extrema.upper.size());
    low = read("lower", extrema.lower.size());
  }

  result.status = FitStatus::ok;
  result.objective_upper = up->tight;
  result.objective_lower = low->tight;
  result.upper = finish_side(up->raw, problem, true, options, result.diagnostics);
  result.lower = finish_side(low->raw, problem, false, options, result.diagnostics);

  if (result.upper && result.lower && *result.upper == *result.lower) {
    result.is_equality = true;
    for (const auto& r : problem.rows) result.sharps_upper.insert(r.name);
    result.sharps_lower = result.sharps_upper;
  } else {
    if (result.upper) result.sharps_upper = tight_rows(*result.upper, problem.rows);
    if (result.lower) result.sharps_lower = tight_rows(*result.lower, problem.rows);
  }
  result.touch_upper = result.sharps_upper.size();
  result.touch_lower = result.sharps_lower.size();
  return result;
}

}  // namespace optimist
