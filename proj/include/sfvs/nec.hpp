#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sfvs/graph.hpp"

namespace sfvs {

/// Signature of X ⊆ A under d-neighbor equivalence.
///
/// Stored as bit planes over V∖A: plane k holds the vertices u with
/// |X ∩ N(u)| ≥ k+1, so min(d, |X ∩ N(u)|) is the number of planes holding u.
struct NeighborKey {
  static constexpr int kMaxDepth = 4;
  std::array<VertexSet, kMaxDepth> at_least{};

  friend bool operator==(const NeighborKey&, const NeighborKey&) = default;
};

struct NeighborKeyHash {
  std::size_t operator()(const NeighborKey& k) const {
    std::size_t h = 0;
    for (const auto& p : k.at_least) h = h * 1000003u ^ p.hash();
    return h;
  }
};

inline NeighborKey neighbor_key(const Graph& g, const VertexSet& complement, const VertexSet& x, int d) {
  NeighborKey k;
  x.for_each([&](Vertex v) {
    const VertexSet nb = g.adj(v) & complement;
    for (int j = d - 1; j >= 1; --j) k.at_least[j] |= k.at_least[j - 1] & nb;
    k.at_least[0] |= nb;
  });
  return k;
}

/// Representatives of ≡_A^d: Rep_A^d with a key → class lookup.
class NecFamily {
public:
  NecFamily() = default;

  [[nodiscard]] const VertexSet& side() const { return side_; }
  [[nodiscard]] const VertexSet& complement() const { return complement_; }
  [[nodiscard]] int depth() const { return depth_; }
  /// nec_d(A).
  [[nodiscard]] int class_count() const { return static_cast<int>(reps_.size()); }
  [[nodiscard]] const std::vector<VertexSet>& representatives() const { return reps_; }
  [[nodiscard]] const VertexSet& rep(int cls) const { return reps_[static_cast<std::size_t>(cls)]; }
  [[nodiscard]] const NeighborKey& key(int cls) const { return keys_[static_cast<std::size_t>(cls)]; }

  [[nodiscard]] NeighborKey key_of(const VertexSet& x) const { return neighbor_key(*g_, complement_, x, depth_); }

  /// Class index of x; -1 when the key is unknown (cannot happen for x ⊆ A).
  [[nodiscard]] int class_of_key(const NeighborKey& k) const {
    auto it = lookup_.find(k);
    return it == lookup_.end() ? -1 : it->second;
  }

  /// Class index of x. Throws InputError when x ⊄ A.
  [[nodiscard]] int class_of(const VertexSet& x) const {
    if (!x.subset_of(side_)) throw InputError("set is not contained in the family's side");
    return class_of_key(key_of(x));
  }

  /// rep_A^d(x).
  [[nodiscard]] const VertexSet& rep_of(const VertexSet& x) const { return reps_[static_cast<std::size_t>(class_of(x))]; }

  /// Sorted class indices of {rep(\{v\}) : v ∈ A}.
  [[nodiscard]] std::vector<int> singleton_classes() const {
    std::vector<int> out;
    side_.for_each([&](Vertex v) { out.push_back(class_of_key(key_of(VertexSet{v}))); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend NecFamily compute_reps(const Graph& g, const VertexSet& a, int d);

private:
  const Graph* g_ = nullptr;
  VertexSet side_;
  VertexSet complement_;
  int depth_ = 1;
  std::vector<VertexSet> reps_;
  std::vector<NeighborKey> keys_;
  std::unordered_map<NeighborKey, int, NeighborKeyHash> lookup_;
};

/// Computes Rep_A^d by level-wise closure from ∅.
///
/// Level k+1 candidates are R ∪ {v} for the level-k representatives R; they
/// are visited in lexicographic order, so the first member found for a key
/// is the (size, lex)-smallest one reachable. The graph must outlive the family.
inline NecFamily compute_reps(const Graph& g, const VertexSet& a, int d) {
  if (d < 1 || d > NeighborKey::kMaxDepth) throw InputError("neighbor-equivalence depth out of range");
  if (!a.subset_of(g.vertices())) throw InputError("side is not a subset of V(G)");
  NecFamily f;
  f.g_ = &g;
  f.side_ = a;
  f.complement_ = g.vertices() - a;
  f.depth_ = d;
  auto add = [&](const VertexSet& r, const NeighborKey& k) {
    f.lookup_.emplace(k, static_cast<int>(f.reps_.size()));
    f.reps_.push_back(r);
    f.keys_.push_back(k);
  };
  add(VertexSet{}, NeighborKey{});
  std::vector<int> level{0};
  while (!level.empty()) {
    std::unordered_set<VertexSet, VertexSetHash> seen;
    std::vector<VertexSet> cands;
    for (int cls : level) {
      const VertexSet r = f.reps_[cls];
      (a - r).for_each([&](Vertex v) {
        VertexSet c = r;
        c.insert(v);
        if (seen.insert(c).second) cands.push_back(c);
      });
    }
    std::sort(cands.begin(), cands.end(), [](const VertexSet& x, const VertexSet& y) { return lex_less(x, y); });
    std::vector<int> next;
    for (const auto& c : cands) {
      NeighborKey k = f.key_of(c);
      if (!f.lookup_.contains(k)) {
        next.push_back(static_cast<int>(f.reps_.size()));
        add(c, k);
      }
    }
    level = std::move(next);
  }
  return f;
}

inline const VertexSet& rep_of(const NecFamily& f, const VertexSet& x) { return f.rep_of(x); }

/// X ≡_A^d Y.
inline bool same_class(const Graph& g, const VertexSet& a, int d, const VertexSet& x, const VertexSet& y) {
  const VertexSet comp = g.vertices() - a;
  return neighbor_key(g, comp, x, d) == neighbor_key(g, comp, y, d);
}

}  // namespace sfvs
