#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfvs/cut.hpp"
#include "sfvs/dp.hpp"
#include "sfvs/graph.hpp"

namespace sfvs {

/// Largest graph the exhaustive oracles accept.
inline constexpr int kBruteForceLimit = 24;

struct BruteResult {
  std::int64_t weight = kNoSolution;
  VertexSet sforest;
};

namespace detail {

template <typename Pred>
BruteResult brute_max(const Graph& g, const std::vector<std::int64_t>& w, int guard, Pred&& ok) {
  const int n = g.n();
  if (n > guard) throw SizeGuardError("exhaustive search limited to " + std::to_string(guard) + " vertices");
  BruteResult best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet x;
    std::int64_t weight = 0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) {
        x.insert(v);
        weight += w[v];
      }
    if (weight < best.weight) continue;
    if (weight == best.weight && !lex_less(x, best.sforest)) continue;
    if (ok(x)) best = {weight, x};
  }
  return best;
}

/// Union-find acyclicity test of g[x]: a forest has exactly |x| - #components edges.
inline bool acyclic_by_union_find(const Graph& g, const VertexSet& x) {
  std::vector<int> parent(static_cast<std::size_t>(g.n()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [u, v] : g.edges()) {
    if (!x.contains(u) || !x.contains(v)) continue;
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace detail

/// Maximum-weight S-forest by exhaustive search; ties go to the lex-smallest set.
inline BruteResult brute_force_sfvs(const Instance& inst) {
  inst.validate();
  return detail::brute_max(inst.graph, inst.weights, kBruteForceLimit,
                           [&](const VertexSet& x) { return is_s_forest(inst.graph, x, inst.s); });
}

/// Maximum-weight induced forest by exhaustive search with a union-find cycle test.
inline BruteResult brute_force_fvs(const Graph& g, const std::vector<std::int64_t>& weights) {
  return detail::brute_max(g, weights, kBruteForceLimit, [&](const VertexSet& x) { return detail::acyclic_by_union_find(g, x); });
}

/// An S̄-contraction of Y with the vertex cover built in the lemma's proof.
struct Scontraction {
  BlockPartition p_y;              // partition of Y∖S
  std::vector<VertexSet> x_blocks; // X↓cc(X∖S)
  std::vector<VertexSet> y_blocks; // Y↓P_Y
  std::vector<VertexSet> vc;       // blocks of the cover, X-side blocks first
};

namespace detail {

/// Shortest cycle of g through some vertex in `from`, as a vertex list; empty if none.
inline std::vector<Vertex> shortest_cycle_through(const Graph& g, const VertexSet& from) {
  std::vector<Vertex> best;
  from.for_each([&](Vertex r) {
    g.adj(r).for_each([&](Vertex u) {
      // BFS from u to r avoiding the edge r-u
      std::vector<int> prev(static_cast<std::size_t>(g.n()), -2);
      std::vector<Vertex> queue{u};
      prev[u] = -1;
      for (std::size_t h = 0; h < queue.size() && prev[r] == -2; ++h) {
        const Vertex a = queue[h];
        g.adj(a).for_each([&](Vertex b) {
          if (prev[b] != -2 || (a == u && b == r)) return;
          prev[b] = a;
          queue.push_back(b);
        });
      }
      if (prev[r] == -2) return;
      std::vector<Vertex> cyc;
      for (Vertex c = r; c != -1; c = prev[c]) cyc.push_back(c);
      if (best.empty() || cyc.size() < best.size()) best = std::move(cyc);
    });
  });
  return best;
}

inline bool neighborhoods_distinct(const BlockGraph& bg, const std::vector<int>& ids) {
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      if (bg.graph.adj(ids[a]) == bg.graph.adj(ids[b])) return false;
  return true;
}

}  // namespace detail

/// Conditions (1)–(3) of the S̄-contraction lemma for a candidate result.
inline bool scontraction_conditions_hold(const Instance& inst, const VertexSet& a, const VertexSet& x,
                                         const VertexSet& y, const Scontraction& sc) {
  const Graph& g = inst.graph;
  // (1)
  const BlockGraph full = contracted(g, sc.x_blocks, sc.y_blocks, ContractMode::full);
  if (!is_forest(full.graph, full.graph.vertices())) return false;
  // (2)
  const BlockPartition xcc = connected_components(g, x - inst.s);
  bool ok = true;
  ((x | y) & inst.s).for_each([&](Vertex v) {
    for (const auto& p : xcc.blocks())
      if ((g.adj(v) & p.vertices).size() > 1) ok = false;
    for (const auto& p : sc.p_y.blocks())
      if ((g.adj(v) & p.vertices).size() > 1) ok = false;
  });
  if (!ok) return false;
  // (3)
  const BlockGraph bip = contracted(g, sc.x_blocks, sc.y_blocks, ContractMode::bipartite);
  std::vector<int> ids;
  for (const auto& c : sc.vc) {
    auto it = std::find(bip.blocks.begin(), bip.blocks.end(), c);
    if (it == bip.blocks.end()) return false;
    ids.push_back(static_cast<int>(it - bip.blocks.begin()));
  }
  VertexSet cover;
  for (int id : ids) cover.insert(id);
  for (auto [u, v] : bip.graph.edges())
    if (!cover.contains(u) && !cover.contains(v)) return false;
  if (static_cast<int>(ids.size()) > 4 * mim_cut(g, a)) return false;
  return detail::neighborhoods_distinct(bip, ids);
}

/// Builds P_Y by the merge loop of the S̄-contraction lemma: start from
/// cc(Y∖S) and, while the contracted graph of X ∪ Y has a cycle, merge the
/// Y-blocks on a shortest one. Then picks the cover: blocks of degree ≥ 2 in
/// the contracted bipartite graph plus the X-side end of every isolated edge.
///
/// Throws InputError unless X ⊆ A, Y ⊆ V∖A and G[X ∪ Y] is an S-forest;
/// throws std::logic_error if the result breaks one of the lemma's conditions.
inline Scontraction find_scontraction(const Instance& inst, const VertexSet& a, const VertexSet& x,
                                      const VertexSet& y) {
  const Graph& g = inst.graph;
  if (!x.subset_of(a) || y.intersects(a) || !y.subset_of(g.vertices()))
    throw InputError("find_scontraction: X must lie in A and Y outside A");
  if (!is_s_forest(g, x | y, inst.s)) throw InputError("find_scontraction: G[X ∪ Y] is not an S-forest");
  Scontraction sc;
  sc.x_blocks = contract_components(inst, x).sets();
  std::vector<VertexSet> py = connected_components(g, y - inst.s).sets();
  const std::vector<Vertex> ys = (y & inst.s).to_vector();
  for (;;) {
    std::vector<VertexSet> yb = py;
    for (Vertex v : ys) yb.push_back(VertexSet{v});
    const BlockGraph full = contracted(g, sc.x_blocks, yb, ContractMode::full);
    VertexSet py_ids;
    for (std::size_t k = 0; k < py.size(); ++k) py_ids.insert(full.a_count + static_cast<int>(k));
    VertexSet all_ids = full.graph.vertices();
    std::vector<Vertex> cyc = detail::shortest_cycle_through(full.graph, py_ids);
    if (cyc.empty()) {
      // a cycle avoiding every P_Y block would lie inside G[X]↓cc(X∖S)
      if (!is_forest(full.graph, all_ids)) throw std::logic_error("contracted graph has a cycle avoiding P_Y");
      break;
    }
    VertexSet merged;
    std::vector<VertexSet> rest;
    for (std::size_t k = 0; k < py.size(); ++k) {
      const int id = full.a_count + static_cast<int>(k);
      if (std::find(cyc.begin(), cyc.end(), id) != cyc.end())
        merged |= py[k];
      else
        rest.push_back(py[k]);
    }
    for (Vertex id : cyc)
      if (id >= full.a_count + static_cast<int>(py.size()) || id < full.a_count) {
        const VertexSet& blk = full.blocks[id];
        if (blk.size() == 1 && blk.subset_of(inst.s)) throw std::logic_error("contracted cycle through an S block");
      }
    rest.push_back(merged);
    py = std::move(rest);
  }
  std::vector<Block> pb;
  for (const auto& p : py) pb.push_back(Block{p, false});
  sc.p_y = BlockPartition(std::move(pb));
  sc.y_blocks = contract_partial(y, sc.p_y, inst.s).sets();

  const BlockGraph bip = contracted(g, sc.x_blocks, sc.y_blocks, ContractMode::bipartite);
  VertexSet chosen;
  for (Vertex b = 0; b < bip.graph.n(); ++b)
    if (bip.graph.adj(b).size() >= 2) chosen.insert(b);
  for (auto [u, v] : bip.graph.edges())
    if (bip.graph.adj(u).size() == 1 && bip.graph.adj(v).size() == 1) chosen.insert(u < bip.a_count ? u : v);
  chosen.for_each([&](Vertex b) { sc.vc.push_back(bip.blocks[b]); });
  if (!scontraction_conditions_hold(inst, a, x, y, sc))
    throw std::logic_error("S-bar contraction violates the lemma's conditions");
  return sc;
}

/// The index read off a cover as in the index-existence proof.
inline IndexTuple index_from_cover(const NodeContext& ctx, const VertexSet& x, const Scontraction& sc) {
  IndexTuple i;
  VertexSet in_vc;
  for (const auto& blk : sc.vc) {
    const bool s_single = blk.size() == 1 && blk.subset_of(ctx.s());
    if (blk.subset_of(ctx.inside)) {
      in_vc |= blk;
      (s_single ? i.xvc_s : i.xvc_ns).push_back(s_single ? ctx.in1.class_of(blk) : ctx.in2.class_of(blk));
    } else {
      (s_single ? i.yvc_s : i.yvc_ns).push_back(s_single ? ctx.out1.class_of(blk) : ctx.out2.class_of(blk));
    }
  }
  for (auto* v : {&i.xvc_ns, &i.xvc_s, &i.yvc_ns, &i.yvc_s}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  i.x_rest = ctx.in1.class_of(x - in_vc);
  return i;
}

/// Conditions (a)–(f) of complement solutions. Throws InputError unless p
/// partitions Y∖S.
inline bool is_complement_solution(const NodeContext& ctx, const VertexSet& y, const BlockPartition& p,
                                   const IndexTuple& i) {
  const Graph& g = ctx.graph();
  if (!y.subset_of(ctx.outside)) throw InputError("complement solution must lie outside V_x");
  for (const auto& b : p.blocks())
    if (b.s_singleton) throw InputError("S-bar contraction holds an S block");
  const BlockPartition yb = contract_partial(y, p, ctx.s());
  const VertexSet ys = y & ctx.s();
  // (a)
  for (int c : i.yvc_s) {
    int hits = 0;
    ys.for_each([&](Vertex v) { hits += ctx.out1.class_of(VertexSet{v}) == c; });
    if (hits != 1) return false;
  }
  // (b)
  for (int c : i.yvc_ns) {
    int hits = 0;
    for (const auto& b : p.blocks()) hits += ctx.out2.class_of(b.vertices) == c;
    if (hits != 1) return false;
  }
  // (c)
  auto sets = yb.sets();
  const BlockGraph gy = contracted(g, sets, std::span<const VertexSet>{}, ContractMode::full);
  if (!is_forest(gy.graph, gy.graph.vertices())) return false;
  // (d)
  for (int c : i.xvc_s)
    for (const auto& b : p.blocks()) {
      bool ok = true;
      ctx.in1.rep(c).for_each([&](Vertex v) { ok = ok && (g.adj(v) & b.vertices).size() <= 1; });
      if (!ok) return false;
    }
  // (e)
  bool ok = true;
  ys.for_each([&](Vertex v) {
    for (int c : i.xvc_ns) ok = ok && (g.adj(v) & ctx.in2.rep(c)).size() <= 1;
    for (const auto& b : p.blocks()) ok = ok && (g.adj(v) & b.vertices).size() <= 1;
  });
  if (!ok) return false;
  // (f) unmatched Y blocks see nothing of x_rest
  VertexSet unmatched;
  for (const auto& b : yb.blocks()) {
    const bool hit = b.s_singleton ? std::find(i.yvc_s.begin(), i.yvc_s.end(), ctx.out1.class_of(b.vertices)) != i.yvc_s.end()
                                   : std::find(i.yvc_ns.begin(), i.yvc_ns.end(), ctx.out2.class_of(b.vertices)) != i.yvc_ns.end();
    if (!hit) unmatched |= b.vertices;
  }
  return !g.open_union(ctx.in1.rep(i.x_rest)).intersects(unmatched);
}

/// |X²⁺| ≤ 2·mim(G[X, Y]) where X²⁺ are the X vertices with ≥ 2 neighbors in Y.
/// Throws InputError unless X, Y are disjoint and G[X ∪ Y] is a forest.
inline bool check_x2plus(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.intersects(y)) throw InputError("check_x2plus: X and Y overlap");
  if (!is_forest(g, x | y)) throw InputError("check_x2plus: G[X ∪ Y] is not a forest");
  int heavy = 0;
  x.for_each([&](Vertex v) { heavy += (g.adj(v) & y).size() >= 2; });
  return heavy <= 2 * max_induced_matching(g, x, y);
}

/// b represents a: best(a, Y) == best(b, Y) for every Y ⊆ outside.
inline bool check_represents(const Instance& inst, const SolutionTable& a, const SolutionTable& b,
                             const VertexSet& outside) {
  if (outside.size() > 12) throw SizeGuardError("check_represents limited to |complement| <= 12");
  const auto out = outside.to_vector();
  for (std::uint32_t mask = 0; mask < (1u << out.size()); ++mask) {
    VertexSet y;
    for (std::size_t k = 0; k < out.size(); ++k)
      if (mask >> k & 1) y.insert(out[k]);
    if (best(inst, a, y) != best(inst, b, y)) return false;
  }
  return true;
}

}  // namespace sfvs
