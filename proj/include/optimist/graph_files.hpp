#pragma once

#include <filesystem>
#include <vector>

#include "optimist/graph.hpp"

namespace optimist {

// Reads a .g6 file (one graph6 string per line, blank lines and a leading
// ">>graph6<<" header skipped) or a .json file (one graph payload or an array
// of them). A directory contributes its .g6 and .json files in filename
// order; other files are ignored. Errors name the file and line.
std::vector<Graph> read_graphs(const std::filesystem::path& path);

}  // namespace optimist
