#include "optimist/knowledge_table.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace optimist {

KnowledgeTable::KnowledgeTable(std::vector<std::string> numeric_columns,
                               std::vector<std::string> boolean_columns)
    : numeric_columns_(std::move(numeric_columns)), boolean_columns_(std::move(boolean_columns)) {
  std::set<std::string> seen;
  for (const auto& c : numeric_columns_) {
    if (!seen.insert(c).second) throw TableError("duplicate column: " + c);
  }
  for (const auto& c : boolean_columns_) {
    if (!seen.insert(c).second) throw TableError("duplicate column: " + c);
  }
  if (seen.count("name")) throw TableError("\"name\" is reserved for the graph-name column");
}

namespace {

TableRow compute_row(std::string name, const Graph& g, const InvariantRegistry& registry) {
  TableRow row;
  row.name = std::move(name);
  try {
    for (const auto& inv : registry.numeric()) row.numeric.push_back(inv.compute(g));
    for (const auto& prop : registry.boolean()) row.flags.push_back(prop.compute(g));
  } catch (const std::exception& e) {
    throw TableError("invariant computation failed for graph " + row.name + " (" + encode_graph6(g) +
                     "): " + e.what());
  }
  return row;
}

}  // namespace

KnowledgeTable KnowledgeTable::build(std::span<const Graph> graphs, const InvariantRegistry& registry) {
  KnowledgeTable table(registry.numeric_names(), registry.boolean_names());
  for (const auto& g : graphs) table.append_graph(g, registry);
  return table;
}

std::string KnowledgeTable::append_graph(const Graph& g, const InvariantRegistry& registry) {
  if (registry.numeric_names() != numeric_columns_ || registry.boolean_names() != boolean_columns_) {
    throw TableError("registry columns do not match the table columns");
  }
  std::string name = "G" + std::to_string(rows_.size());
  TableRow row = compute_row(name, g, registry);
  insert_row(std::move(row), g);
  return name;
}

void KnowledgeTable::insert_row(TableRow row, Graph g) {
  if (row.numeric.size() != numeric_columns_.size() || row.flags.size() != boolean_columns_.size()) {
    throw TableError("row " + row.name + " does not have a value for every column");
  }
  if (graphs_.count(row.name)) throw TableError("duplicate graph name: " + row.name);
  graphs_.emplace(row.name, std::move(g));
  rows_.push_back(std::move(row));
}

bool KnowledgeTable::has_numeric(std::string_view column) const {
  return std::find(numeric_columns_.begin(), numeric_columns_.end(), column) != numeric_columns_.end();
}

bool KnowledgeTable::has_boolean(std::string_view column) const {
  return std::find(boolean_columns_.begin(), boolean_columns_.end(), column) != boolean_columns_.end();
}

std::size_t KnowledgeTable::numeric_index(std::string_view column) const {
  auto it = std::find(numeric_columns_.begin(), numeric_columns_.end(), column);
  if (it == numeric_columns_.end()) throw TableError("unknown numeric column: " + std::string(column));
  return static_cast<std::size_t>(it - numeric_columns_.begin());
}

std::size_t KnowledgeTable::boolean_index(std::string_view column) const {
  auto it = std::find(boolean_columns_.begin(), boolean_columns_.end(), column);
  if (it == boolean_columns_.end()) throw TableError("unknown boolean column: " + std::string(column));
  return static_cast<std::size_t>(it - boolean_columns_.begin());
}

const Rational& KnowledgeTable::numeric_value(std::size_t row, std::string_view column) const {
  return rows_.at(row).numeric[numeric_index(column)];
}

bool KnowledgeTable::flag_value(std::size_t row, std::string_view column) const {
  return rows_.at(row).flags[boolean_index(column)];
}

RowSubset KnowledgeTable::filter_by_property(std::string_view property) const {
  std::size_t col = boolean_index(property);
  RowSubset subset;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].flags[col]) {
      subset.indices.push_back(i);
      subset.names.push_back(rows_[i].name);
    }
  }
  return subset;
}

std::size_t KnowledgeTable::count_true(std::string_view property) const {
  std::size_t col = boolean_index(property);
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [col](const TableRow& r) { return bool(r.flags[col]); }));
}

const Graph& KnowledgeTable::graph(std::string_view name) const {
  auto it = graphs_.find(name);
  if (it == graphs_.end()) throw TableError("unknown graph: " + std::string(name));
  return it->second;
}

bool operator==(const TableRow& a, const TableRow& b) {
  return a.name == b.name && a.numeric == b.numeric && a.flags == b.flags;
}

bool operator==(const KnowledgeTable& a, const KnowledgeTable& b) {
  return a.numeric_columns_ == b.numeric_columns_ && a.boolean_columns_ == b.boolean_columns_ &&
         a.rows_ == b.rows_ && a.graphs_ == b.graphs_;
}

std::string table_to_csv(const KnowledgeTable& table) {
  std::ostringstream out;
  out << "name";
  for (const auto& c : table.numeric_columns()) out << ',' << c;
  for (const auto& c : table.boolean_columns()) out << ',' << c;
  out << '\n';
  for (const auto& row : table.rows()) {
    out << row.name;
    for (const auto& v : row.numeric) out << ',' << to_string(v);
    for (bool f : row.flags) out << ',' << (f ? "true" : "false");
    out << '\n';
  }
  return out.str();
}

std::string table_sidecar(const KnowledgeTable& table) {
  nlohmann::json graphs = nlohmann::json::object();
  for (const auto& row : table.rows()) graphs[row.name] = encode_graph6(table.graph(row.name));
  nlohmann::json doc = {
      {"schema", kTableSchema},
      {"numeric_columns", table.numeric_columns()},
      {"boolean_columns", table.boolean_columns()},
      {"graphs", graphs},
  };
  return doc.dump(2);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

KnowledgeTable table_from_csv(std::string_view csv, std::string_view sidecar_json) {
  if (csv.empty()) throw TableError("table file is empty");
  nlohmann::json sidecar;
  try {
    sidecar = nlohmann::json::parse(sidecar_json);
  } catch (const nlohmann::json::exception& e) {
    throw TableError(std::string("graph sidecar is not valid JSON: ") + e.what());
  }
  if (!sidecar.is_object() || sidecar.value("schema", "") != kTableSchema) {
    throw TableError("graph sidecar schema mismatch: expected " + std::string(kTableSchema));
  }
  std::vector<std::string> numeric, boolean;
  try {
    numeric = sidecar.at("numeric_columns").get<std::vector<std::string>>();
    boolean = sidecar.at("boolean_columns").get<std::vector<std::string>>();
    if (!sidecar.at("graphs").is_object()) throw TableError("graph sidecar \"graphs\" must be an object");
  } catch (const nlohmann::json::exception& e) {
    throw TableError(std::string("malformed graph sidecar: ") + e.what());
  }
  const auto& graphs = sidecar.at("graphs");

  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw TableError("table file has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "name") throw TableError("first column must be \"name\"");

  // Position of every declared column in the file.
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 1; i < header.size(); ++i) position[header[i]] = i;
  for (const auto* list : {&numeric, &boolean}) {
    for (const auto& c : *list) {
      if (!position.count(c)) throw TableError("table file is missing column: " + c);
    }
  }
  if (header.size() != numeric.size() + boolean.size() + 1) {
    throw TableError("table file has undeclared columns");
  }

  KnowledgeTable table(numeric, boolean);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw TableError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(header.size()));
    }
    TableRow row;
    row.name = cells[0];
    try {
      for (const auto& c : numeric) row.numeric.push_back(parse_rational(cells[position.at(c)]));
    } catch (const std::invalid_argument& e) {
      throw TableError("line " + std::to_string(line_no) + ": " + e.what());
    }
    for (const auto& c : boolean) {
      const auto& v = cells[position.at(c)];
      if (v != "true" && v != "false") {
        throw TableError("line " + std::to_string(line_no) + ": column " + c + " is not a boolean");
      }
      row.flags.push_back(v == "true");
    }
    if (!graphs.contains(row.name) || !graphs.at(row.name).is_string()) {
      throw TableError("no stored graph for row " + row.name);
    }
    Graph g = parse_graph6(graphs.at(row.name).get<std::string>());
    table.insert_row(std::move(row), std::move(g));
  }
  return table;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p += ".graphs.json";
  return p;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TableError("cannot write " + path.string());
  out << content;
  if (!out) throw TableError("write failed for " + path.string());
}

}  // namespace

void save_table(const KnowledgeTable& table, const std::filesystem::path& csv_path) {
  write_file(csv_path, table_to_csv(table));
  write_file(sidecar_path(csv_path), table_sidecar(table));
}

KnowledgeTable load_table(const std::filesystem::path& csv_path) {
  std::string csv = read_file(csv_path);
  if (csv.empty()) throw TableError("table file is empty: " + csv_path.string());
  return table_from_csv(csv, read_file(sidecar_path(csv_path)));
}

}  // namespace optimist
