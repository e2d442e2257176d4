#include "optimist/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include "optimist/invariants.hpp"

namespace optimist {

namespace {

struct Combination {
  std::vector<std::string> features;
  std::string hypothesis;
};

struct Outcome {
  std::optional<Conjecture> upper;
  std::optional<Conjecture> lower;
  bool empty = false;
  bool infeasible = false;
  std::string failure;
  std::vector<std::string> diagnostics;
};

std::string label(const Combination& c) {
  std::string s = c.hypothesis + " [";
  for (std::size_t i = 0; i < c.features.size(); ++i) s += (i ? ", " : "") + c.features[i];
  return s + "]";
}

Outcome fit_one(const KnowledgeTable& table, const std::string& target, const Combination& combo,
                const SweepOptions& options) {
  Outcome out;
  try {
    BoundFitProblem problem = BoundFitProblem::from_table(table, target, combo.features, combo.hypothesis);
    if (problem.rows.empty()) {
      out.empty = true;
      return out;
    }
    BoundFitResult fit = solve_bound_fit(problem, options.fit);
    for (const auto& d : fit.diagnostics) out.diagnostics.push_back(label(combo) + ": " + d);
    if (fit.status != FitStatus::ok) {
      out.infeasible = fit.status == FitStatus::infeasible;
      if (fit.status == FitStatus::node_limit) out.failure = label(combo) + ": node limit reached";
      return out;
    }
    std::string display = options.display ? options.display(combo.hypothesis) : default_property_display(combo.hypothesis);
    Hypothesis hyp = Hypothesis::from_table(table, combo.hypothesis, display);
    auto make = [&](const LinearBound& b, Relation rel, std::size_t touch, const NameSet& sharps) {
      return Conjecture{hyp, LinearConclusion(target, rel, b.weights, combo.features, b.intercept), touch, sharps};
    };
    if (fit.is_equality) {
      out.upper = make(*fit.upper, Relation::eq, fit.touch_upper, fit.sharps_upper);
      return out;
    }
    if (fit.upper) out.upper = make(*fit.upper, Relation::le, fit.touch_upper, fit.sharps_upper);
    if (fit.lower) out.lower = make(*fit.lower, Relation::ge, fit.touch_lower, fit.sharps_lower);
  } catch (const std::exception& e) {
    out.failure = label(combo) + ": " + e.what();
  }
  return out;
}

}  // namespace

Sweep make_all_linear_conjectures(const KnowledgeTable& table, const std::string& target,
                                  const std::vector<std::string>& numeric_columns,
                                  const std::vector<std::string>& boolean_columns, const SweepOptions& options) {
  if (!table.has_numeric(target)) throw PipelineError("target is not a numeric column: " + target);
  if (table.empty()) throw PipelineError("the knowledge table has no rows to fit");

  std::vector<Combination> combos;
  std::vector<std::vector<std::string>> seen_pairs;
  for (std::size_t i = 0; i < numeric_columns.size(); ++i) {
    for (std::size_t j = i + 1; j < numeric_columns.size(); ++j) {
      const auto& a = numeric_columns[i];
      const auto& b = numeric_columns[j];
      if (a == target || b == target || a == b) continue;
      std::vector<std::string> key{std::min(a, b), std::max(a, b)};
      if (std::find(seen_pairs.begin(), seen_pairs.end(), key) != seen_pairs.end()) continue;
      seen_pairs.push_back(key);
      for (const auto& h : boolean_columns) combos.push_back({{a, b}, h});
    }
  }

  std::vector<Outcome> outcomes(combos.size());
  unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(combos.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < combos.size(); ++i) outcomes[i] = fit_one(table, target, combos[i], options);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < combos.size(); i = next++) outcomes[i] = fit_one(table, target, combos[i], options);
      });
    }
    for (auto& th : pool) th.join();
  }

  Sweep sweep;
  for (auto& o : outcomes) {
    if (o.empty) {
      ++sweep.stats.empty;
      continue;
    }
    ++sweep.stats.problems;
    if (o.infeasible) ++sweep.stats.infeasible;
    if (!o.failure.empty()) sweep.stats.failures.push_back(std::move(o.failure));
    for (auto& d : o.diagnostics) sweep.stats.diagnostics.push_back(std::move(d));
    if (o.upper) sweep.lists.upper.push_back(std::move(*o.upper));
    if (o.lower) sweep.lists.lower.push_back(std::move(*o.lower));
  }
  return sweep;
}

namespace {

std::vector<Conjecture> refine(std::vector<Conjecture> list, const KnowledgeTable& table,
                               const std::vector<Conjecture>& known, const PipelineOptions& options,
                               PipelineReport& report) {
  list = filter_false(list, table);
  list = hazel(std::move(list), options.min_touch);
  auto m = morgan(list, table);
  for (auto& p : m.incomparable) report.incomparable.push_back(std::move(p));
  list = std::move(m.kept);
  if (!list.empty()) list = options.smokey == SmokeyMode::weak ? weak_smokey(list) : strong_smokey(list);
  std::erase_if(list, [&](const Conjecture& c) {
    return std::any_of(known.begin(), known.end(), [&](const Conjecture& k) { return same_statement(c, k); });
  });
  return list;
}

}  // namespace

PipelineReport run_pipeline(const KnowledgeTable& table, const std::string& target,
                            const std::vector<Conjecture>& known_theorems, const PipelineOptions& options) {
  if (table.empty()) throw PipelineError("the knowledge table has no rows to fit");
  if (!table.has_numeric(target)) throw PipelineError("target is not a numeric column: " + target);
  const auto& features = options.features.empty() ? table.numeric_columns() : options.features;
  const auto& hypotheses = options.hypotheses.empty() ? table.boolean_columns() : options.hypotheses;
  for (const auto& f : features) {
    if (!table.has_numeric(f)) throw PipelineError("unknown numeric column: " + f);
  }
  for (const auto& h : hypotheses) {
    if (!table.has_boolean(h)) throw PipelineError("unknown boolean column: " + h);
  }

  Sweep sweep = make_all_linear_conjectures(table, target, features, hypotheses, options.sweep);
  PipelineReport report;
  report.generated = sweep.lists.upper.size() + sweep.lists.lower.size();
  report.lists.upper = refine(std::move(sweep.lists.upper), table, known_theorems, options, report);
  report.lists.lower = refine(std::move(sweep.lists.lower), table, known_theorems, options, report);
  report.sweep = std::move(sweep.stats);
  return report;
}

}  // namespace optimist
