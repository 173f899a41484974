#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfvs/dp.hpp"
#include "sfvs/graph.hpp"
#include "sfvs/layout.hpp"

namespace sfvs {

/// Node Multiway Cut input. Terminal weights matter only when terminals are
/// deletable.
struct NmcInstance {
  Graph graph;
  VertexSet terminals;
  std::vector<std::int64_t> weights;

  void validate() const {
    if (terminals.size() < 2) throw InputError("node multiway cut needs at least two terminals");
    Instance{graph, terminals, weights}.validate();
  }

  /// With undeletable terminals a cut exists iff no two terminals are adjacent.
  void require_cut_exists(bool deletable_terminals) const {
    if (deletable_terminals) return;
    terminals.for_each([&](Vertex t) {
      if (graph.adj(t).intersects(terminals))
        throw InputError("terminals " + graph.name(t) + " and " + graph.name((graph.adj(t) & terminals).to_vector()[0]) +
                         " are adjacent; no multiway cut exists");
    });
  }
};

inline constexpr int kBruteForceNmcLimit = 20;

struct NmcReduction {
  Instance inst;
  RootedLayout layout;
  Vertex apex = -1;
  std::int64_t big = 0;
};

struct NmcResult {
  std::int64_t weight = 0;
  VertexSet cut;
};

/// True when no two terminals outside `cut` share a component of G − cut.
inline bool separates(const Graph& g, const VertexSet& terminals, const VertexSet& cut) {
  const BlockPartition comps = connected_components(g, g.vertices() - cut);
  for (const auto& c : comps.blocks())
    if ((c.vertices & terminals).size() > 1) return false;
  return true;
}

/// Adds an apex v adjacent to every terminal, sets S = {v}, and gives v (and,
/// unless deletable, every terminal) the weight 1 + Σ|w|. The layout gains a
/// new root over the old root and the leaf of v.
inline NmcReduction reduce_to_sfvs(const NmcInstance& nmc, const RootedLayout& l, bool deletable_terminals = false) {
  nmc.validate();
  nmc.require_cut_exists(deletable_terminals);
  const Graph& g = nmc.graph;
  if (l.n() != g.n()) throw InputError("layout and graph sizes differ");
  const int n = g.n();
  NmcReduction r;
  r.apex = n;
  r.big = 1;
  for (auto w : nmc.weights) r.big += w < 0 ? -w : w;

  auto edges = g.edges();
  nmc.terminals.for_each([&](Vertex t) { edges.emplace_back(t, n); });
  auto names = g.names();
  std::string apex = "apex";
  while (g.find(apex) != -1) apex += "_";
  names.push_back(apex);
  r.inst.graph = Graph::from_edges(n + 1, edges, std::move(names));
  r.inst.s = VertexSet{n};
  r.inst.weights = nmc.weights;
  r.inst.weights.push_back(r.big);
  if (!deletable_terminals) nmc.terminals.for_each([&](Vertex t) { r.inst.weights[t] = r.big; });

  auto nodes = l.nodes();
  const int old_root = l.root();
  nodes.push_back({-1, -1, -1, n});
  const int leaf = static_cast<int>(nodes.size()) - 1;
  nodes.push_back({old_root, leaf, -1, -1});
  r.layout = RootedLayout(std::move(nodes), static_cast<int>(nodes.size()) - 1, n + 1);
  return r;
}

/// Minimum-weight multiway cut through the SFVS solver on the reduced instance.
inline NmcResult solve_nmc(const NmcInstance& nmc, const RootedLayout& l, const SolveOptions& opt = {},
                           bool deletable_terminals = false) {
  const NmcReduction red = reduce_to_sfvs(nmc, l, deletable_terminals);
  const SolveResult s = solve(red.inst, red.layout, opt);
  if (s.deletion.contains(red.apex)) throw std::logic_error("optimal solution deleted the apex");
  NmcResult out;
  out.cut = s.deletion;
  out.cut.erase(red.apex);
  if (!deletable_terminals && out.cut.intersects(nmc.terminals)) throw std::logic_error("cut contains a terminal");
  if (!separates(nmc.graph, nmc.terminals, out.cut)) throw std::logic_error("cut does not separate the terminals");
  out.cut.for_each([&](Vertex v) { out.weight += nmc.weights[v]; });
  return out;
}

/// Exhaustive minimum-weight multiway cut; ties go to the lex-smallest cut.
inline NmcResult brute_force_nmc(const NmcInstance& nmc, bool deletable_terminals = false) {
  nmc.validate();
  nmc.require_cut_exists(deletable_terminals);
  const Graph& g = nmc.graph;
  if (g.n() > kBruteForceNmcLimit)
    throw SizeGuardError("brute_force_nmc limited to " + std::to_string(kBruteForceNmcLimit) + " vertices");
  const VertexSet pool = deletable_terminals ? g.vertices() : g.vertices() - nmc.terminals;
  const auto cand = pool.to_vector();
  bool found = false;
  NmcResult best;
  for (std::uint32_t mask = 0; mask < (1u << cand.size()); ++mask) {
    VertexSet cut;
    std::int64_t w = 0;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (mask >> k & 1) {
        cut.insert(cand[k]);
        w += nmc.weights[cand[k]];
      }
    if (found && (w > best.weight || (w == best.weight && !lex_less(cut, best.cut)))) continue;
    if (!separates(g, nmc.terminals, cut)) continue;
    best = {w, cut};
    found = true;
  }
  return best;
}

}  // namespace sfvs
