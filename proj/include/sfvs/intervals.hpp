#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sfvs/cut.hpp"
#include "sfvs/graph.hpp"
#include "sfvs/layout.hpp"

namespace sfvs {

struct Interval {
  std::int64_t left = 0;
  std::int64_t right = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline bool intersects(const Interval& a, const Interval& b) { return a.left <= b.right && b.left <= a.right; }

/// Intersection graph of closed intervals.
inline Graph interval_graph(const std::vector<Interval>& iv, std::vector<std::string> names = {}) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  const int n = static_cast<int>(iv.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersects(iv[i], iv[j])) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges, std::move(names));
}

/// Caterpillar over vertices sorted by (left, right, id).
///
/// Throws InputError when the intervals do not realize g, and
/// std::logic_error if some cut of the result has mim above 1.
inline RootedLayout interval_layout(const Graph& g, const std::vector<Interval>& iv) {
  const int n = g.n();
  if (static_cast<int>(iv.size()) != n) throw InputError("interval count does not match vertex count");
  for (int i = 0; i < n; ++i) {
    if (iv[i].left > iv[i].right) throw InputError("interval with left > right for " + g.name(i));
    for (int j = i + 1; j < n; ++j)
      if (intersects(iv[i], iv[j]) != g.adjacent(i, j))
        throw InputError("intervals disagree with adjacency of " + g.name(i) + " and " + g.name(j));
  }
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::tie(iv[a].left, iv[a].right, a) < std::tie(iv[b].left, iv[b].right, b);
  });
  RootedLayout l = layout_from_order(order);
  for (int x = 0; x < l.node_count(); ++x)
    if (mim_cut(g, l.below(x)) > 1) throw std::logic_error("interval layout cut with mim above 1");
  return l;
}

}  // namespace sfvs
