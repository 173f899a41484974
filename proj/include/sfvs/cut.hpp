#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sfvs/graph.hpp"
#include "sfvs/layout.hpp"

namespace sfvs {

enum class Field { gf2, rational };

namespace detail {

inline std::vector<std::vector<int>> cut_matrix(const Graph& g, const VertexSet& a) {
  const VertexSet comp = g.vertices() - a;
  const auto cols = comp.to_vector();
  std::vector<std::vector<int>> m;
  a.for_each([&](Vertex v) {
    std::vector<int> row;
    row.reserve(cols.size());
    for (Vertex u : cols) row.push_back(g.adjacent(v, u) ? 1 : 0);
    m.push_back(std::move(row));
  });
  return m;
}

/// Rank over GF(2); rows are bit vectors, elimination is word-parallel.
inline int rank_gf2(const Graph& g, const VertexSet& a) {
  const VertexSet comp = g.vertices() - a;
  std::vector<VertexSet> rows;
  a.for_each([&](Vertex v) { rows.push_back(g.adj(v) & comp); });
  int rank = 0;
  for (Vertex col = comp.first(); col != -1; col = comp.next(col)) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r].contains(col)) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r].contains(col)) {
        // xor
        VertexSet both = rows[r] & rows[rank];
        rows[r] = (rows[r] | rows[rank]) - both;
      }
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q by fraction-free (Bareiss) elimination on exact integers.
inline int rank_rational(const std::vector<std::vector<int>>& m01) {
  using boost::multiprecision::cpp_int;
  if (m01.empty() || m01[0].empty()) return 0;
  std::vector<std::vector<cpp_int>> m(m01.size());
  for (std::size_t i = 0; i < m01.size(); ++i) m[i].assign(m01[i].begin(), m01[i].end());
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  cpp_int prev = 1;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank of the adjacency matrix between a and V∖a over the chosen field.
inline int cut_rank(const Graph& g, const VertexSet& a, Field field) {
  if (field == Field::gf2) return detail::rank_gf2(g, a);
  return detail::rank_rational(detail::cut_matrix(g, a));
}

/// Maximum induced matching of the bipartite graph G[left, right].
///
/// Exact: branches on a vertex of the left side (unmatched, or matched to
/// each of its neighbors) and memoizes on the remaining vertex set.
inline int max_induced_matching(const Graph& g, const VertexSet& left, const VertexSet& right) {
  std::unordered_map<VertexSet, int, VertexSetHash> memo;
  auto rec = [&](auto&& self, VertexSet l, VertexSet r) -> int {
    // drop vertices without a neighbor across
    VertexSet l2, r2;
    l.for_each([&](Vertex v) {
      if (g.adj(v).intersects(r)) l2.insert(v);
    });
    r.for_each([&](Vertex v) {
      if (g.adj(v).intersects(l2)) r2.insert(v);
    });
    if (l2.empty()) return 0;
    const VertexSet key = l2 | r2;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // branch on the left vertex of smallest cut degree
    Vertex a = -1;
    int best_deg = VertexSet::kMaxVertices + 1;
    l2.for_each([&](Vertex v) {
      int d = (g.adj(v) & r2).size();
      if (d < best_deg) {
        best_deg = d;
        a = v;
      }
    });
    VertexSet la = l2;
    la.erase(a);
    int best = self(self, la, r2);
    (g.adj(a) & r2).for_each([&](Vertex b) {
      VertexSet nl = l2 - g.adj(b);
      nl.erase(a);
      VertexSet nr = r2 - g.adj(a);
      best = std::max(best, 1 + self(self, nl, nr));
    });
    memo.emplace(key, best);
    return best;
  };
  return rec(rec, left, right);
}

/// mim(A): maximum induced matching of G[A, V∖A].
inline int mim_cut(const Graph& g, const VertexSet& a) { return max_induced_matching(g, a, g.vertices() - a); }

/// mw(A): number of distinct rows of the cut matrix M_{A, V∖A}.
inline int distinct_external_neighborhoods(const Graph& g, const VertexSet& a) {
  const VertexSet comp = g.vertices() - a;
  std::unordered_set<VertexSet, VertexSetHash> rows;
  a.for_each([&](Vertex v) { rows.insert(g.adj(v) & comp); });
  return static_cast<int>(rows.size());
}

enum class WidthKind { gf2, rational, mim };

struct CutEntry {
  int node = -1;
  VertexSet below;
  int rw = 0;
  int rw_q = 0;
  int mim = 0;
};

struct CutReport {
  std::vector<CutEntry> entries;  // indexed by node id
};

/// Max cut value over all layout nodes for `kind`, plus all three values per node.
inline std::pair<int, CutReport> width(const Graph& g, const RootedLayout& l, WidthKind kind) {
  if (l.n() != g.n()) throw InputError("layout and graph sizes differ");
  CutReport rep;
  rep.entries.resize(static_cast<std::size_t>(l.node_count()));
  int best = 0;
  for (int x = 0; x < l.node_count(); ++x) {
    CutEntry& e = rep.entries[x];
    e.node = x;
    e.below = l.below(x);
    e.rw = cut_rank(g, e.below, Field::gf2);
    e.rw_q = cut_rank(g, e.below, Field::rational);
    e.mim = mim_cut(g, e.below);
    const int v = kind == WidthKind::gf2 ? e.rw : kind == WidthKind::rational ? e.rw_q : e.mim;
    best = std::max(best, v);
  }
  return {best, std::move(rep)};
}

}  // namespace sfvs
