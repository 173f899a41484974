#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfvs/vertex_set.hpp"

namespace sfvs {

/// Raised for malformed input: bad graphs, layouts, files, parameters.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive routine is asked to run beyond its size guard.
class SizeGuardError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Undirected simple graph on vertices 0..n-1 with a symmetric bit adjacency matrix.
class Graph {
public:
  Graph() = default;

  /// Throws InputError on self-loops, repeated edges, or out-of-range ids.
  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                          std::vector<std::string> names = {}) {
    if (n < 0 || n > VertexSet::kMaxVertices)
      throw SizeGuardError("vertex count " + std::to_string(n) + " outside [0, " +
                       std::to_string(VertexSet::kMaxVertices) + "]");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), VertexSet{});
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
      if (g.adj_[u].contains(v))
        throw InputError("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
      g.adj_[u].insert(v);
      g.adj_[v].insert(u);
      ++g.m_;
    }
    if (names.empty()) {
      for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    }
    if (static_cast<int>(names.size()) != n) throw InputError("name count does not match vertex count");
    g.names_ = std::move(names);
    return g;
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] VertexSet vertices() const { return VertexSet::range(n_); }
  [[nodiscard]] const VertexSet& adj(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return adj_[u].contains(v); }
  [[nodiscard]] const std::string& name(Vertex v) const { return names_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n_; ++u)
      adj_[u].for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  /// Union of the neighborhoods of u's members, without removing u itself.
  [[nodiscard]] VertexSet open_union(const VertexSet& u) const {
    VertexSet out;
    u.for_each([&](Vertex v) { out |= adj_[v]; });
    return out;
  }

  /// Name lookup; -1 when absent.
  [[nodiscard]] Vertex find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<Vertex>(it - names_.begin());
  }

private:
  int n_ = 0;
  int m_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<std::string> names_;
};

/// The weighted SFVS input: graph, special set S, integer weights.
///
/// Rational weights are expected to be pre-scaled to integers by the caller.
struct Instance {
  Graph graph;
  VertexSet s;
  std::vector<std::int64_t> weights;

  /// Throws InputError when S escapes V(G), weights are missing, or
  /// the absolute weight total reaches 2^62.
  void validate() const {
    if (!s.subset_of(graph.vertices())) throw InputError("S is not a subset of V(G)");
    if (static_cast<int>(weights.size()) != graph.n()) throw InputError("weight count does not match vertex count");
    constexpr std::int64_t kLimit = std::int64_t{1} << 62;
    std::int64_t total = 0;
    for (auto w : weights) {
      if (w <= -kLimit || w >= kLimit) throw InputError("weight magnitude too large");
      total += w < 0 ? -w : w;
      if (total >= kLimit) throw InputError("absolute weight total exceeds 2^62");
    }
  }

  [[nodiscard]] std::int64_t weight(const VertexSet& x) const {
    std::int64_t total = 0;
    x.for_each([&](Vertex v) { total += weights[static_cast<std::size_t>(v)]; });
    return total;
  }
};

struct Block {
  VertexSet vertices;
  bool s_singleton = false;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Ordered, pairwise-disjoint, nonempty blocks sorted by smallest vertex.
class BlockPartition {
public:
  BlockPartition() = default;

  /// Sorts blocks; throws InputError when blocks are empty or overlap.
  explicit BlockPartition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    VertexSet seen;
    for (const auto& b : blocks_) {
      if (b.vertices.empty()) throw InputError("empty block in partition");
      if (b.vertices.intersects(seen)) throw InputError("overlapping blocks in partition");
      if (b.s_singleton && b.vertices.size() != 1) throw InputError("S-singleton block with more than one vertex");
      seen |= b.vertices;
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.vertices.first() < b.vertices.first(); });
  }

  [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
  [[nodiscard]] std::size_t size() const { return blocks_.size(); }
  [[nodiscard]] bool empty() const { return blocks_.empty(); }
  [[nodiscard]] const Block& operator[](std::size_t i) const { return blocks_[i]; }

  [[nodiscard]] VertexSet support() const {
    VertexSet out;
    for (const auto& b : blocks_) out |= b.vertices;
    return out;
  }
  [[nodiscard]] std::vector<VertexSet> sets() const {
    std::vector<VertexSet> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.vertices);
    return out;
  }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

private:
  std::vector<Block> blocks_;
};

/// N(U) = (union of N(v), v in U) minus U.
inline VertexSet neighborhood(const Graph& g, const VertexSet& u) { return g.open_union(u) - u; }

/// Connected components of g[x], as S-bar blocks, sorted by smallest vertex.
inline BlockPartition connected_components(const Graph& g, const VertexSet& x) {
  std::vector<Block> out;
  VertexSet left = x;
  while (!left.empty()) {
    VertexSet comp{left.first()};
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet grow = (g.open_union(frontier) & left) - comp;
      comp |= grow;
      frontier = grow;
    }
    left -= comp;
    out.push_back(Block{comp, false});
  }
  return BlockPartition(std::move(out));
}

enum class ContractMode { full, bipartite, mixed };

/// A contracted graph: vertex i of `graph` is the block `blocks[i]`.
/// The first `a_count` blocks come from the a-side, the rest from the b-side.
struct BlockGraph {
  Graph graph;
  std::vector<VertexSet> blocks;
  int a_count = 0;
};

/// G[a ∪ b] (full), G[a, b] (bipartite) or G[a | b] (mixed).
///
/// Blocks A, B are adjacent iff N(A) ∩ B is nonempty. Throws InputError on an
/// empty block unless allow_empty is set (aux graphs may carry the empty
/// representative as an isolated block).
inline BlockGraph contracted(const Graph& g, std::span<const VertexSet> a, std::span<const VertexSet> b,
                             ContractMode mode, bool allow_empty = false) {
  BlockGraph out;
  out.blocks.assign(a.begin(), a.end());
  out.blocks.insert(out.blocks.end(), b.begin(), b.end());
  out.a_count = static_cast<int>(a.size());
  const int k = static_cast<int>(out.blocks.size());
  std::vector<VertexSet> nbr(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (!allow_empty && out.blocks[i].empty()) throw InputError("empty block in contraction");
    nbr[i] = neighborhood(g, out.blocks[i]);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const bool ia = i < out.a_count, ja = j < out.a_count;
      bool allowed = false;
      switch (mode) {
        case ContractMode::full: allowed = true; break;
        case ContractMode::bipartite: allowed = ia != ja; break;
        case ContractMode::mixed: allowed = ia || ja; break;
      }
      if (allowed && (nbr[i].intersects(out.blocks[j]) || nbr[j].intersects(out.blocks[i]))) edges.emplace_back(i, j);
    }
  }
  out.graph = Graph::from_edges(k, edges);
  return out;
}

inline BlockGraph contracted(const Graph& g, const BlockPartition& a, const BlockPartition& b, ContractMode mode) {
  auto as = a.sets();
  auto bs = b.sets();
  return contracted(g, as, bs, mode);
}

/// X↓P = P ∪ (X∩S choose 1). Throws InputError unless p partitions x∖s.
inline BlockPartition contract_partial(const VertexSet& x, const BlockPartition& p, const VertexSet& s) {
  VertexSet covered;
  for (const auto& b : p.blocks()) {
    if (b.vertices.intersects(s)) throw InputError("S-bar contraction covers an S vertex");
    covered |= b.vertices;
  }
  if (!(covered == x - s)) throw InputError("S-bar contraction does not partition x minus S");
  std::vector<Block> blocks = p.blocks();
  (x & s).for_each([&](Vertex v) { blocks.push_back(Block{VertexSet{v}, true}); });
  return BlockPartition(std::move(blocks));
}

/// Vertices of g[x] that lie on at least one cycle.
///
/// A vertex is on a cycle iff it is incident to a non-bridge edge of g[x].
inline VertexSet cycle_vertices(const Graph& g, const VertexSet& x) {
  const int n = g.n();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  VertexSet on_cycle;
  int timer = 0;
  struct Frame {
    Vertex v, parent, next;
  };
  std::vector<Frame> stack;
  x.for_each([&](Vertex root) {
    if (disc[root] != -1) return;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, -1});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const VertexSet nb = g.adj(f.v) & x;
      f.next = nb.next(f.next);
      if (f.next != -1) {
        Vertex w = f.next;
        if (w == f.parent) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, -1});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (done.parent != -1) {
          low[done.parent] = std::min(low[done.parent], low[done.v]);
          if (low[done.v] <= disc[done.parent]) {
            // tree edge parent-v is not a bridge
            on_cycle.insert(done.v);
            on_cycle.insert(done.parent);
          }
        }
      }
    }
  });
  // Back edges are never bridges; their endpoints are already covered by the
  // non-bridge tree edges on the cycle they close.
  return on_cycle;
}

/// True iff no cycle of g[x] passes through a vertex of s ∩ x.
inline bool is_s_forest(const Graph& g, const VertexSet& x, const VertexSet& s) {
  return !cycle_vertices(g, x).intersects(s);
}

/// True iff g[x] is acyclic.
inline bool is_forest(const Graph& g, const VertexSet& x) { return cycle_vertices(g, x).empty(); }

}  // namespace sfvs
