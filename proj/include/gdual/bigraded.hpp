#pragma once

#include <map>
#include <utility>

namespace gdual {

/// Dimensions indexed by (homological degree s, internal degree t).
struct BigradedDimensions {
  std::map<std::pair<int, int>, int> entries;

  int get(int s, int t) const {
    auto it = entries.find({s, t});
    return it == entries.end() ? 0 : it->second;
  }
  void add(int s, int t, int d) {
    if (d != 0) entries[{s, t}] += d;
  }
  /// Collapse to total degree t + s_sign * s.
  std::map<int, int> by_total(int s_sign) const {
    std::map<int, int> out;
    for (const auto& [k, d] : entries) out[k.second + s_sign * k.first] += d;
    return out;
  }

  friend bool operator==(const BigradedDimensions&, const BigradedDimensions&) = default;
};

}  // namespace gdual
