#include "optimist/graph_files.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace optimist {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void read_g6(const fs::path& path, std::vector<Graph>& out) {
  std::istringstream in(slurp(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
    if (line.empty()) continue;
    try {
      out.push_back(parse_graph6(line));
    } catch (const GraphError& e) {
      throw GraphError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void read_json(const fs::path& path, std::vector<Graph>& out) {
  try {
    auto j = nlohmann::json::parse(slurp(path));
    if (j.is_array()) {
      for (const auto& g : j) out.push_back(graph_from_payload(g));
    } else {
      out.push_back(graph_from_payload(j));
    }
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(path.string() + ": " + e.what());
  } catch (const GraphError& e) {
    throw GraphError(path.string() + ": " + e.what());
  }
}

bool read_file(const fs::path& path, std::vector<Graph>& out) {
  if (path.extension() == ".g6") {
    read_g6(path, out);
  } else if (path.extension() == ".json") {
    read_json(path, out);
  } else {
    return false;
  }
  return true;
}

}  // namespace

std::vector<Graph> read_graphs(const fs::path& path) {
  std::error_code ec;
  std::vector<Graph> out;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    for (const auto& f : files) read_file(f, out);
    return out;
  }
  if (!fs::exists(path, ec)) throw GraphError("no such file or directory: " + path.string());
  if (!read_file(path, out)) throw GraphError("expected a .g6 or .json file: " + path.string());
  return out;
}

}  // namespace optimist
