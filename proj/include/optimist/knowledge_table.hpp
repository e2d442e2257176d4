#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optimist/graph.hpp"
#include "optimist/invariants.hpp"
#include "optimist/rational.hpp"

namespace optimist {

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kTableSchema = "optimist-table/1";

struct TableRow {
  std::string name;
  std::vector<Rational> numeric;  // aligned with numeric_columns()
  std::vector<bool> flags;        // aligned with boolean_columns()
};

// Rows that satisfy a boolean property, in table order.
struct RowSubset {
  std::vector<std::size_t> indices;
  std::vector<std::string> names;
};

// The agent's memory: one row per graph, one column per registered invariant.
// Rows are only ever appended; names run "G0", "G1", ... in insertion order.
class KnowledgeTable {
 public:
  KnowledgeTable() = default;
  KnowledgeTable(std::vector<std::string> numeric_columns, std::vector<std::string> boolean_columns);

  // Invariant failures are rethrown as TableError naming the offending graph.
  static KnowledgeTable build(std::span<const Graph> graphs, const InvariantRegistry& registry);

  // Computes the new row before touching the table, so a failure leaves it
  // unchanged. Returns the new row's name.
  std::string append_graph(const Graph& g, const InvariantRegistry& registry);

  const std::vector<std::string>& numeric_columns() const { return numeric_columns_; }
  const std::vector<std::string>& boolean_columns() const { return boolean_columns_; }
  const std::vector<TableRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  bool has_numeric(std::string_view column) const;
  bool has_boolean(std::string_view column) const;
  std::size_t numeric_index(std::string_view column) const;
  std::size_t boolean_index(std::string_view column) const;

  const Rational& numeric_value(std::size_t row, std::string_view column) const;
  bool flag_value(std::size_t row, std::string_view column) const;

  RowSubset filter_by_property(std::string_view property) const;
  std::size_t count_true(std::string_view property) const;

  const Graph& graph(std::string_view name) const;
  const std::map<std::string, Graph, std::less<>>& graphs() const { return graphs_; }

  // Used by load(); checks column counts and name uniqueness.
  void insert_row(TableRow row, Graph g);

  friend bool operator==(const KnowledgeTable& a, const KnowledgeTable& b);

 private:
  std::vector<std::string> numeric_columns_;
  std::vector<std::string> boolean_columns_;
  std::vector<TableRow> rows_;
  std::map<std::string, Graph, std::less<>> graphs_;
};

bool operator==(const TableRow& a, const TableRow& b);

// CSV (header row, graph name first) plus a JSON sidecar at
// `<csv path>.graphs.json` holding the schema tag, column kinds and graph6
// strings keyed by graph name.
std::string table_to_csv(const KnowledgeTable& table);
std::string table_sidecar(const KnowledgeTable& table);
KnowledgeTable table_from_csv(std::string_view csv, std::string_view sidecar_json);

void save_table(const KnowledgeTable& table, const std::filesystem::path& csv_path);
KnowledgeTable load_table(const std::filesystem::path& csv_path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace optimist
