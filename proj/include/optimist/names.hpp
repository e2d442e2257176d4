#pragma once

#include <set>
#include <string>
#include <string_view>

namespace optimist {

// Graph names compare by length first, so "G2" < "G10".
struct NaturalLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using NameSet = std::set<std::string, NaturalLess>;

}  // namespace optimist
