#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sfvs/sfvs.hpp"

namespace sfvs::testing {

inline Graph named(int n, const std::vector<std::pair<int, int>>& edges, std::vector<std::string> names = {}) {
  return Graph::from_edges(n, edges, std::move(names));
}

inline Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

inline Instance unit(Graph g, VertexSet s) {
  const int n = g.n();
  return Instance{std::move(g), s, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)};
}

inline VertexSet from_mask(std::uint64_t mask, int n) {
  VertexSet x;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1) x.insert(v);
  return x;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

inline VertexSet random_subset(std::mt19937_64& rng, int n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  VertexSet x;
  for (int v = 0; v < n; ++v)
    if (coin(rng)) x.insert(v);
  return x;
}

/// Random instance with S ~ 1/3 and weights in [lo, hi].
inline Instance random_instance(std::mt19937_64& rng, int n, double p, int lo = -3, int hi = 10) {
  Instance inst{random_graph(rng, n, p), random_subset(rng, n, 1.0 / 3), {}};
  std::uniform_int_distribution<int> w(lo, hi);
  for (int v = 0; v < n; ++v) inst.weights.push_back(w(rng));
  return inst;
}

inline RootedLayout random_layout(std::mt19937_64& rng, int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  // random binary tree by repeated joining of two random subtrees
  std::vector<RootedLayout::Node> nodes;
  std::vector<int> roots;
  for (Vertex v : order) {
    nodes.push_back({-1, -1, -1, v});
    roots.push_back(static_cast<int>(nodes.size()) - 1);
  }
  while (roots.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    nodes.push_back({roots[a], roots[b], -1, -1});
    const int joined = static_cast<int>(nodes.size()) - 1;
    if (a > b) std::swap(a, b);
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(b));
    roots[a] = joined;
  }
  return RootedLayout(std::move(nodes), roots[0], n);
}

/// Does g[x] contain a simple cycle through a vertex of s? Plain DFS over simple paths.
inline bool naive_has_s_cycle(const Graph& g, const VertexSet& x, const VertexSet& s) {
  bool found = false;
  (x & s).for_each([&](Vertex start) {
    if (found) return;
    std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
    std::function<void(Vertex, int)> dfs = [&](Vertex v, int len) {
      if (found) return;
      on[v] = 1;
      (g.adj(v) & x).for_each([&](Vertex u) {
        if (found) return;
        if (u == start && len >= 3) found = true;
        else if (!on[u]) dfs(u, len + 1);
      });
      on[v] = 0;
    };
    dfs(start, 1);
  });
  return found;
}

/// Brute-force classes of ≡_A^d: key → (size, lex)-smallest member.
inline std::map<std::vector<int>, VertexSet> brute_classes(const Graph& g, const VertexSet& a, int d) {
  const auto av = a.to_vector();
  const VertexSet comp = g.vertices() - a;
  std::map<std::vector<int>, VertexSet> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << av.size()); ++mask) {
    VertexSet x;
    for (std::size_t k = 0; k < av.size(); ++k)
      if (mask >> k & 1) x.insert(av[k]);
    std::vector<int> key;
    comp.for_each([&](Vertex u) { key.push_back(std::min(d, (g.adj(u) & x).size())); });
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, x);
    } else if (x.size() < it->second.size() || (x.size() == it->second.size() && lex_less(x, it->second))) {
      it->second = x;
    }
  }
  return best;
}

/// best() over the full power set of `inside`, for representativity checks.
inline SolutionTable power_set_table(const Instance& inst, const VertexSet& inside) {
  const auto in = inside.to_vector();
  std::vector<PartialSolution> all;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.size()); ++mask) {
    VertexSet x;
    for (std::size_t k = 0; k < in.size(); ++k)
      if (mask >> k & 1) x.insert(in[k]);
    all.push_back({x, inst.weight(x)});
  }
  return SolutionTable(std::move(all));
}

}  // namespace sfvs::testing
