#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sfvs/cut.hpp"
#include "sfvs/graph.hpp"
#include "sfvs/layout.hpp"
#include "sfvs/nec.hpp"

namespace sfvs {

/// max(∅) for best(): no member of the table completes Y to an S-forest.
inline constexpr std::int64_t kNoSolution = std::numeric_limits<std::int64_t>::min();

struct PartialSolution {
  VertexSet vertices;
  std::int64_t weight = 0;

  friend bool operator==(const PartialSolution&, const PartialSolution&) = default;
};

/// Set of partial solutions, deduplicated by vertex set and kept in lex order.
class SolutionTable {
public:
  SolutionTable() = default;
  explicit SolutionTable(std::vector<PartialSolution> s) : items_(std::move(s)) {
    std::sort(items_.begin(), items_.end(),
              [](const PartialSolution& a, const PartialSolution& b) { return lex_less(a.vertices, b.vertices); });
    items_.erase(std::unique(items_.begin(), items_.end(),
                             [](const PartialSolution& a, const PartialSolution& b) { return a.vertices == b.vertices; }),
                 items_.end());
  }

  [[nodiscard]] const std::vector<PartialSolution>& solutions() const { return items_; }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] bool contains(const VertexSet& x) const {
    return std::any_of(items_.begin(), items_.end(), [&](const PartialSolution& p) { return p.vertices == x; });
  }
  [[nodiscard]] VertexSet support() const {
    VertexSet out;
    for (const auto& p : items_) out |= p.vertices;
    return out;
  }

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;

private:
  std::vector<PartialSolution> items_;
};

/// Everything reduce() needs to know about one node x of the layout.
struct NodeContext {
  const Instance* inst = nullptr;
  VertexSet inside;   // V_x
  VertexSet outside;  // V̄_x
  int mim = 0;        // mim(V_x), exact
  NecFamily in1, in2, out1, out2;
  std::vector<int> in_singletons;   // classes of in1 holding some {v}, v ∈ V_x
  std::vector<int> out_singletons;  // classes of out1 holding some {v}, v ∈ V̄_x

  [[nodiscard]] int vc_bound() const { return 4 * mim; }
  [[nodiscard]] const Graph& graph() const { return inst->graph; }
  [[nodiscard]] const VertexSet& s() const { return inst->s; }
};

/// Builds the four representative families for V_x. mim < 0 computes it.
inline NodeContext make_context(const Instance& inst, const VertexSet& inside, int mim = -1) {
  NodeContext ctx;
  ctx.inst = &inst;
  ctx.inside = inside;
  ctx.outside = inst.graph.vertices() - inside;
  ctx.mim = mim >= 0 ? mim : mim_cut(inst.graph, inside);
  ctx.in1 = compute_reps(inst.graph, ctx.inside, 1);
  ctx.in2 = compute_reps(inst.graph, ctx.inside, 2);
  ctx.out1 = compute_reps(inst.graph, ctx.outside, 1);
  ctx.out2 = compute_reps(inst.graph, ctx.outside, 2);
  ctx.in_singletons = ctx.in1.singleton_classes();
  ctx.out_singletons = ctx.out1.singleton_classes();
  return ctx;
}

/// The four vertex-cover components of an index. x_s and y_s draw from the
/// singleton classes only.
enum class VcKind : std::uint8_t { x_ns = 0, x_s = 1, y_ns = 2, y_s = 3 };

/// One representative of an index, tagged with the component it belongs to.
struct VcElement {
  VcKind kind = VcKind::x_ns;
  int cls = 0;

  friend auto operator<=>(const VcElement&, const VcElement&) = default;
};

struct IndexTuple {
  std::vector<int> xvc_ns;  // classes of in2
  std::vector<int> xvc_s;   // classes of in1
  int x_rest = 0;           // class of in1
  std::vector<int> yvc_ns;  // classes of out2
  std::vector<int> yvc_s;   // classes of out1

  [[nodiscard]] int vc_size() const {
    return static_cast<int>(xvc_ns.size() + xvc_s.size() + yvc_ns.size() + yvc_s.size());
  }
  [[nodiscard]] std::vector<VcElement> elements() const {
    std::vector<VcElement> out;
    for (int c : xvc_ns) out.push_back({VcKind::x_ns, c});
    for (int c : xvc_s) out.push_back({VcKind::x_s, c});
    for (int c : yvc_ns) out.push_back({VcKind::y_ns, c});
    for (int c : yvc_s) out.push_back({VcKind::y_s, c});
    return out;
  }

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
};

/// cc(X, i): groups of index elements, each group sorted, groups sorted.
using CcSignature = std::vector<std::vector<VcElement>>;

/// Streams every tuple of 𝕀_x exactly once. `fn` receives each tuple.
template <typename Fn>
void enumerate_indices(const NodeContext& ctx, Fn&& fn) {
  std::vector<VcElement> pool;
  for (int c = 0; c < ctx.in2.class_count(); ++c) pool.push_back({VcKind::x_ns, c});
  for (int c : ctx.in_singletons) pool.push_back({VcKind::x_s, c});
  for (int c = 0; c < ctx.out2.class_count(); ++c) pool.push_back({VcKind::y_ns, c});
  for (int c : ctx.out_singletons) pool.push_back({VcKind::y_s, c});
  const int bound = ctx.vc_bound();
  IndexTuple cur;
  auto rec = [&](auto&& self, std::size_t from, int used) -> void {
    for (int r = 0; r < ctx.in1.class_count(); ++r) {
      cur.x_rest = r;
      fn(static_cast<const IndexTuple&>(cur));
    }
    if (used == bound) return;
    for (std::size_t j = from; j < pool.size(); ++j) {
      auto& vec = pool[j].kind == VcKind::x_ns  ? cur.xvc_ns
                  : pool[j].kind == VcKind::x_s ? cur.xvc_s
                  : pool[j].kind == VcKind::y_ns ? cur.yvc_ns
                                                 : cur.yvc_s;
      vec.push_back(pool[j].cls);
      self(self, j + 1, used + 1);
      vec.pop_back();
    }
  };
  rec(rec, 0, 0);
}

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                        : static_cast<std::uint64_t>(p);
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace detail

/// |𝕀_x| in closed form (saturating): nec_1(V_x) · Σ_{k ≤ 4m} C(pool, k).
inline std::uint64_t index_count(const NodeContext& ctx) {
  const std::uint64_t pool = static_cast<std::uint64_t>(ctx.in2.class_count()) + ctx.in_singletons.size() +
                             static_cast<std::uint64_t>(ctx.out2.class_count()) + ctx.out_singletons.size();
  std::uint64_t sum = 0, binom = 1;
  for (int k = 0; k <= ctx.vc_bound() && static_cast<std::uint64_t>(k) <= pool; ++k) {
    sum = detail::sat_add(sum, binom);
    // C(pool, k+1) = C(pool, k) * (pool - k) / (k + 1)
    unsigned __int128 next = static_cast<unsigned __int128>(binom) * (pool - k) / (k + 1);
    binom = next > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                             : static_cast<std::uint64_t>(next);
  }
  return detail::sat_mul(static_cast<std::uint64_t>(ctx.in1.class_count()), sum);
}

/// (4m)^(4m) with 0^0 = 1, saturating.
inline std::uint64_t signature_class_bound(int mim) {
  const std::uint64_t b = 4 * static_cast<std::uint64_t>(mim);
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < b; ++k) out = detail::sat_mul(out, b);
  return out;
}

/// Upper bound on |reduce(T)| at this node.
inline std::uint64_t table_size_bound(const NodeContext& ctx) {
  return detail::sat_mul(index_count(ctx), signature_class_bound(ctx.mim));
}

/// X↓cc(X∖S): components of X∖S followed by one singleton per S vertex of X.
inline BlockPartition contract_components(const Instance& inst, const VertexSet& x) {
  return contract_partial(x, connected_components(inst.graph, x - inst.s), inst.s);
}

inline const VertexSet& element_set(const NodeContext& ctx, const VcElement& e) {
  switch (e.kind) {
    case VcKind::x_ns: return ctx.in2.rep(e.cls);
    case VcKind::x_s: return ctx.in1.rep(e.cls);
    case VcKind::y_ns: return ctx.out2.rep(e.cls);
    case VcKind::y_s: break;
  }
  return ctx.out1.rep(e.cls);
}

/// aux(X, i) = G[X↓cc(X∖S) | Y_vc^S̄ ∪ Y_vc^S], y-blocks in index order after X's blocks.
inline BlockGraph aux_graph(const NodeContext& ctx, const VertexSet& x, const IndexTuple& i) {
  auto xb = contract_components(*ctx.inst, x).sets();
  std::vector<VertexSet> yb;
  for (int c : i.yvc_ns) yb.push_back(ctx.out2.rep(c));
  for (int c : i.yvc_s) yb.push_back(ctx.out1.rep(c));
  return contracted(ctx.graph(), xb, yb, ContractMode::mixed, /*allow_empty=*/true);
}

namespace detail {

inline bool at_most_one_neighbor(const Graph& g, Vertex v, const VertexSet& u) { return (g.adj(v) & u).size() <= 1; }

/// For each X-block: the matched index element, if any.
inline std::vector<std::optional<VcElement>> matched_elements(const NodeContext& ctx, const BlockPartition& xb,
                                                              const IndexTuple& i) {
  std::vector<std::optional<VcElement>> out;
  for (const auto& b : xb.blocks()) {
    if (b.s_singleton) {
      int c = ctx.in1.class_of(b.vertices);
      if (std::find(i.xvc_s.begin(), i.xvc_s.end(), c) != i.xvc_s.end())
        out.emplace_back(VcElement{VcKind::x_s, c});
      else
        out.emplace_back();
    } else {
      int c = ctx.in2.class_of(b.vertices);
      if (std::find(i.xvc_ns.begin(), i.xvc_ns.end(), c) != i.xvc_ns.end())
        out.emplace_back(VcElement{VcKind::x_ns, c});
      else
        out.emplace_back();
    }
  }
  return out;
}

}  // namespace detail

/// Conditions (a)–(f) of partial solutions associated with i.
inline bool is_partial_solution(const NodeContext& ctx, const VertexSet& x, const IndexTuple& i) {
  const Graph& g = ctx.graph();
  if (!x.subset_of(ctx.inside)) return false;
  const BlockPartition xb = contract_components(*ctx.inst, x);
  const VertexSet xs = x & ctx.s();
  // (a) unique S vertex per x_s representative
  for (int c : i.xvc_s) {
    int hits = 0;
    xs.for_each([&](Vertex v) { hits += ctx.in1.class_of(VertexSet{v}) == c; });
    if (hits != 1) return false;
  }
  // (b) unique component per x_ns representative
  for (int c : i.xvc_ns) {
    int hits = 0;
    for (const auto& b : xb.blocks())
      if (!b.s_singleton) hits += ctx.in2.class_of(b.vertices) == c;
    if (hits != 1) return false;
  }
  // (c) aux(X, i) is a forest
  const BlockGraph aux = aux_graph(ctx, x, i);
  if (!is_forest(aux.graph, aux.graph.vertices())) return false;
  // (d) every component sees each y_s vertex at most once
  for (const auto& b : xb.blocks()) {
    if (b.s_singleton) continue;
    for (int c : i.yvc_s) {
      bool ok = true;
      ctx.out1.rep(c).for_each([&](Vertex v) { ok = ok && detail::at_most_one_neighbor(g, v, b.vertices); });
      if (!ok) return false;
    }
  }
  // (e) every S vertex of X sees each y_ns block and each component at most once
  bool ok = true;
  xs.for_each([&](Vertex v) {
    for (int c : i.yvc_ns) ok = ok && detail::at_most_one_neighbor(g, v, ctx.out2.rep(c));
    for (const auto& b : xb.blocks())
      if (!b.s_singleton) ok = ok && detail::at_most_one_neighbor(g, v, b.vertices);
  });
  if (!ok) return false;
  // (f) x_rest ≡¹ X ∖ V(VC_X)
  const auto matched = detail::matched_elements(ctx, xb, i);
  VertexSet rest = x;
  for (std::size_t k = 0; k < matched.size(); ++k)
    if (matched[k]) rest -= xb[k].vertices;
  return ctx.in1.class_of(rest) == i.x_rest;
}

/// cc(X, i). Throws std::invalid_argument unless X is a partial solution for i.
inline CcSignature cc_signature(const NodeContext& ctx, const VertexSet& x, const IndexTuple& i) {
  if (!is_partial_solution(ctx, x, i)) throw std::invalid_argument("cc_signature: not a partial solution for the index");
  const BlockPartition xb = contract_components(*ctx.inst, x);
  const BlockGraph aux = aux_graph(ctx, x, i);
  const auto matched = detail::matched_elements(ctx, xb, i);
  std::vector<VcElement> tag(aux.blocks.size());
  std::vector<char> has(aux.blocks.size(), 0);
  for (std::size_t k = 0; k < matched.size(); ++k)
    if (matched[k]) {
      tag[k] = *matched[k];
      has[k] = 1;
    }
  std::size_t pos = matched.size();
  for (int c : i.yvc_ns) {
    tag[pos] = {VcKind::y_ns, c};
    has[pos++] = 1;
  }
  for (int c : i.yvc_s) {
    tag[pos] = {VcKind::y_s, c};
    has[pos++] = 1;
  }
  CcSignature sig;
  const BlockPartition comps = connected_components(aux.graph, aux.graph.vertices());
  for (const auto& comp : comps.blocks()) {
    std::vector<VcElement> group;
    comp.vertices.for_each([&](Vertex b) {
      if (has[b]) group.push_back(tag[b]);
    });
    if (group.empty()) continue;
    std::sort(group.begin(), group.end());
    sig.push_back(std::move(group));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

/// 𝒜 ⊗ ℬ. Throws InputError when the two tables share vertices.
inline SolutionTable merge(const SolutionTable& a, const SolutionTable& b) {
  if (a.support().intersects(b.support())) throw InputError("merge of tables with overlapping vertex sets");
  std::vector<PartialSolution> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.solutions())
    for (const auto& y : b.solutions()) out.push_back({x.vertices | y.vertices, x.weight + y.weight});
  return SolutionTable(std::move(out));
}

/// best(𝒜, Y): max weight of X ∈ 𝒜 with G[X ∪ Y] an S-forest, or kNoSolution.
inline std::int64_t best(const Instance& inst, const SolutionTable& table, const VertexSet& y) {
  std::int64_t out = kNoSolution;
  for (const auto& p : table.solutions())
    if (p.weight > out && is_s_forest(inst.graph, p.vertices | y, inst.s)) out = p.weight;
  return out;
}

namespace detail {

/// Total order used to pick a class winner: heavier first, then lex-smaller.
inline bool better(const PartialSolution& a, const PartialSolution& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return lex_less(a.vertices, b.vertices);
}

inline std::vector<PartialSolution> ranked(const SolutionTable& t) {
  std::vector<PartialSolution> r = t.solutions();
  std::sort(r.begin(), r.end(), better);
  return r;
}

}  // namespace detail

/// reduce() by direct enumeration of 𝕀_x and the standalone condition checks.
///
/// Exponential in the index count; meant as a cross-check for reduce() on
/// small nodes.
inline SolutionTable reduce_exhaustive(const SolutionTable& table, const NodeContext& ctx) {
  const auto r = detail::ranked(table);
  std::vector<char> keep(r.size(), 0);
  enumerate_indices(ctx, [&](const IndexTuple& i) {
    std::vector<CcSignature> seen;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (!is_partial_solution(ctx, r[k].vertices, i)) continue;
      CcSignature sig = cc_signature(ctx, r[k].vertices, i);
      if (std::find(seen.begin(), seen.end(), sig) == seen.end()) {
        seen.push_back(std::move(sig));
        keep[k] = 1;
      }
    }
  });
  std::vector<PartialSolution> out;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (keep[k]) out.push_back(r[k]);
  return SolutionTable(std::move(out));
}

namespace detail {

/// Depth-first search over index tuples that computes the same union of
/// class winners as reduce_exhaustive without visiting every tuple.
///
/// Tuples are grown one vc element at a time. Admissibility (conditions
/// (a)–(e)) can only be lost when an element is added, and x_rest is a
/// function of the solution once the vc elements are fixed, so it becomes part
/// of the class key instead of a search coordinate. A subtree can therefore
/// only produce winners among the solutions still admissible at its root, and
/// it is skipped once all of them are already kept. Y-side elements with no
/// neighbor in the table's support are dropped: they only add an isolated
/// singleton group to every signature.
class PrunedReducer {
public:
  PrunedReducer(const SolutionTable& table, const NodeContext& ctx) : ctx_(ctx), ranked_(ranked(table)) {
    const Graph& g = ctx.graph();
    for (Vertex v = 0; v < g.n(); ++v) nout_.push_back(g.adj(v) & ctx.outside);
    VertexSet support;
    for (int k = 0; k < static_cast<int>(ranked_.size()); ++k) prepare(k, support);
    max_blocks_ = 0;
    for (const auto& p : prep_) max_blocks_ = std::max(max_blocks_, static_cast<int>(p.blocks.size()));
    build_pool(support);
    stride_ = max_blocks_ + ctx.vc_bound();
    if (ctx.vc_bound() > kMaxVc) throw std::length_error("mim too large for the index search");
  }

  SolutionTable run(int threads) {
    keep_.assign(prep_.size(), 0);
    if (prep_.empty()) return SolutionTable{};
    Frame root;
    for (int p = 0; p < static_cast<int>(prep_.size()); ++p) {
      root.members.push_back(p);
      root.matched.push_back(VertexSet{});
      for (int b = 0; b < stride_; ++b)
        root.labels.push_back(b < static_cast<int>(prep_[p].base_label.size()) ? prep_[p].base_label[b] : -1);
    }
    std::vector<int> chosen;
    collect_winners(root, chosen, keep_);
    if (ctx_.vc_bound() > 0 && open_members(root, keep_)) {
      const int jobs = static_cast<int>(pool_.size());
      threads = std::max(1, std::min(threads, jobs));
      if (threads == 1) {
        for (int j = 0; j < jobs; ++j) expand(root, chosen, j, keep_);
      } else {
        std::atomic<int> next{0};
        std::vector<std::vector<char>> local(static_cast<std::size_t>(threads), keep_);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
          pool.emplace_back([&, t] {
            std::vector<int> ch;
            for (int j = next++; j < jobs; j = next++) expand(root, ch, j, local[t]);
          });
        for (auto& th : pool) th.join();
        for (const auto& l : local)
          for (std::size_t k = 0; k < l.size(); ++k) keep_[k] |= l[k];
      }
    }
    std::vector<PartialSolution> out;
    for (std::size_t p = 0; p < prep_.size(); ++p)
      if (keep_[p]) out.push_back(ranked_[prep_[p].sol]);
    return SolutionTable(std::move(out));
  }

private:
  static constexpr int kMaxVc = 32;

  struct Prepared {
    int sol = 0;
    std::vector<VertexSet> blocks;  // cc(X∖S) blocks then S singletons
    std::vector<char> is_s;
    std::vector<int> base_label;    // component of each block in X↓cc(X∖S)
  };

  struct Frame {
    std::vector<int> members;       // indices into prep_, rank order
    std::vector<int> labels;        // stride_ entries per member
    std::vector<VertexSet> matched; // X-side vertices covered by the vc elements
  };

  struct WinKey {
    VertexSet rest;
    std::array<std::uint8_t, kMaxVc> sig{};
    friend bool operator==(const WinKey&, const WinKey&) = default;
  };
  struct WinKeyHash {
    std::size_t operator()(const WinKey& k) const {
      std::size_t h = k.rest.hash();
      for (auto c : k.sig) h = h * 131u + c;
      return h;
    }
  };

  void prepare(int k, VertexSet& support) {
    const Instance& inst = *ctx_.inst;
    const Graph& g = inst.graph;
    const VertexSet x = ranked_[k].vertices;
    const BlockPartition xb = contract_components(inst, x);
    // (e) on cc(X∖S) does not depend on the index
    bool ok = true;
    (x & inst.s).for_each([&](Vertex v) {
      for (const auto& b : xb.blocks())
        if (!b.s_singleton && (g.adj(v) & b.vertices).size() > 1) ok = false;
    });
    if (!ok) return;
    // X↓cc(X∖S) is a subgraph of every aux(X, i)
    auto sets = xb.sets();
    const BlockGraph full = contracted(g, sets, std::span<const VertexSet>{}, ContractMode::full);
    if (!is_forest(full.graph, full.graph.vertices())) return;
    Prepared p;
    p.sol = k;
    // cc blocks first keeps block order independent of S placement
    for (const auto& b : xb.blocks())
      if (!b.s_singleton) {
        p.blocks.push_back(b.vertices);
        p.is_s.push_back(0);
      }
    for (const auto& b : xb.blocks())
      if (b.s_singleton) {
        p.blocks.push_back(b.vertices);
        p.is_s.push_back(1);
      }
    std::vector<VertexSet> ordered = p.blocks;
    const BlockGraph bg = contracted(g, ordered, std::span<const VertexSet>{}, ContractMode::full);
    p.base_label.assign(p.blocks.size(), -1);
    const BlockPartition comps = connected_components(bg.graph, bg.graph.vertices());
    for (const auto& comp : comps.blocks()) {
      const int label = comp.vertices.first();
      comp.vertices.for_each([&](Vertex b) { p.base_label[b] = label; });
    }
    support |= x;
    prep_.push_back(std::move(p));
  }

  void build_pool(const VertexSet& support) {
    const Graph& g = ctx_.graph();
    // X-side elements: classes matched by exactly one block of some solution
    std::vector<std::vector<int>> ns_match(prep_.size()), s_match(prep_.size());
    std::vector<char> ns_used(static_cast<std::size_t>(ctx_.in2.class_count()), 0);
    std::vector<char> s_used(static_cast<std::size_t>(ctx_.in1.class_count()), 0);
    std::vector<std::vector<int>> block_cls(prep_.size());
    for (std::size_t p = 0; p < prep_.size(); ++p) {
      std::unordered_map<int, int> ns_count, s_count;
      for (std::size_t b = 0; b < prep_[p].blocks.size(); ++b) {
        int c = prep_[p].is_s[b] ? ctx_.in1.class_of(prep_[p].blocks[b]) : ctx_.in2.class_of(prep_[p].blocks[b]);
        block_cls[p].push_back(c);
        ++(prep_[p].is_s[b] ? s_count : ns_count)[c];
      }
      for (auto [c, cnt] : ns_count)
        if (cnt == 1) ns_used[c] = 1;
      for (auto [c, cnt] : s_count)
        if (cnt == 1) s_used[c] = 1;
    }
    for (int c = 0; c < ctx_.in2.class_count(); ++c)
      if (ns_used[c]) pool_.push_back({VcKind::x_ns, c});
    for (int c : ctx_.in_singletons)
      if (s_used[c]) pool_.push_back({VcKind::x_s, c});
    for (int c = 0; c < ctx_.out2.class_count(); ++c)
      if (g.open_union(ctx_.out2.rep(c)).intersects(support)) pool_.push_back({VcKind::y_ns, c});
    for (int c : ctx_.out_singletons)
      if (g.open_union(ctx_.out1.rep(c)).intersects(support)) pool_.push_back({VcKind::y_s, c});

    // per (solution, element): matched block / attached blocks; -1 offset means excluded
    const std::size_t P = prep_.size(), J = pool_.size();
    attach_off_.assign(P * J, -1);
    attach_len_.assign(P * J, 0);
    for (std::size_t p = 0; p < P; ++p) {
      const Prepared& pr = prep_[p];
      const VertexSet xs = [&] {
        VertexSet s;
        for (std::size_t b = 0; b < pr.blocks.size(); ++b)
          if (pr.is_s[b]) s |= pr.blocks[b];
        return s;
      }();
      for (std::size_t j = 0; j < J; ++j) {
        const VcElement e = pool_[j];
        const std::size_t slot = p * J + j;
        if (e.kind == VcKind::x_ns || e.kind == VcKind::x_s) {
          const bool want_s = e.kind == VcKind::x_s;
          int hit = -1, hits = 0;
          for (std::size_t b = 0; b < pr.blocks.size(); ++b)
            if (static_cast<bool>(pr.is_s[b]) == want_s && block_cls[p][b] == e.cls) {
              hit = static_cast<int>(b);
              ++hits;
            }
          if (hits == 1) {
            attach_off_[slot] = static_cast<int>(attach_data_.size());
            attach_data_.push_back(hit);
            attach_len_[slot] = 1;
          }
          continue;
        }
        const VertexSet& u = element_set(ctx_, e);
        bool ok = true;
        if (e.kind == VcKind::y_s) {
          // (d)
          u.for_each([&](Vertex v) {
            for (std::size_t b = 0; b < pr.blocks.size(); ++b)
              if (!pr.is_s[b] && (g.adj(v) & pr.blocks[b]).size() > 1) ok = false;
          });
        } else {
          // (e)
          xs.for_each([&](Vertex v) {
            if ((g.adj(v) & u).size() > 1) ok = false;
          });
        }
        if (!ok) continue;
        const VertexSet nu = g.open_union(u);
        attach_off_[slot] = static_cast<int>(attach_data_.size());
        for (std::size_t b = 0; b < pr.blocks.size(); ++b)
          if (nu.intersects(pr.blocks[b])) {
            attach_data_.push_back(static_cast<int>(b));
            ++attach_len_[slot];
          }
      }
    }
  }

  [[nodiscard]] bool open_members(const Frame& f, const std::vector<char>& keep) const {
    for (int p : f.members)
      if (!keep[p]) return true;
    return false;
  }

  void collect_winners(const Frame& f, const std::vector<int>& chosen, std::vector<char>& keep) const {
    std::unordered_set<WinKey, WinKeyHash> seen;
    seen.reserve(f.members.size() * 2);
    const std::size_t J = pool_.size();
    for (std::size_t m = 0; m < f.members.size(); ++m) {
      const int p = f.members[m];
      const int* lab = &f.labels[m * stride_];
      WinKey key;
      VertexSet rest = ranked_[prep_[p].sol].vertices - f.matched[m];
      rest.for_each([&](Vertex v) { key.rest |= nout_[v]; });
      std::array<int, kMaxVc> raw{};
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        const int j = chosen[k];
        const VcElement e = pool_[j];
        if (e.kind == VcKind::x_ns || e.kind == VcKind::x_s)
          raw[k] = lab[attach_data_[attach_off_[p * J + j]]];
        else
          raw[k] = lab[max_blocks_ + static_cast<int>(k)];
      }
      // canonical relabel by first occurrence
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        std::size_t first = k;
        for (std::size_t t = 0; t < k; ++t)
          if (raw[t] == raw[k]) {
            first = t;
            break;
          }
        key.sig[k] = static_cast<std::uint8_t>(first == k ? k + 1 : key.sig[first]);
      }
      if (seen.insert(key).second) keep[p] = 1;
    }
  }

  /// Child of `f` with pool element j appended; empty when nobody survives.
  Frame child(const Frame& f, int j, int position) const {
    Frame c;
    const std::size_t J = pool_.size();
    const VcElement e = pool_[j];
    const bool xside = e.kind == VcKind::x_ns || e.kind == VcKind::x_s;
    for (std::size_t m = 0; m < f.members.size(); ++m) {
      const int p = f.members[m];
      const int off = attach_off_[p * J + j];
      if (off < 0) continue;
      const int* lab = &f.labels[m * stride_];
      if (xside) {
        c.members.push_back(p);
        c.labels.insert(c.labels.end(), lab, lab + stride_);
        c.matched.push_back(f.matched[m] | prep_[p].blocks[attach_data_[off]]);
        continue;
      }
      // attaching a y-block to two blocks of one component closes a cycle
      const int len = attach_len_[p * J + j];
      std::array<int, 64> roots{};
      bool cycle = false;
      int n_roots = 0;
      std::vector<int> big;
      for (int t = 0; t < len && !cycle; ++t) {
        const int r = lab[attach_data_[off + t]];
        for (int q = 0; q < n_roots; ++q)
          if ((q < 64 ? roots[q] : big[q - 64]) == r) cycle = true;
        if (n_roots < 64)
          roots[n_roots] = r;
        else
          big.push_back(r);
        ++n_roots;
      }
      if (cycle) continue;
      const std::size_t base = c.labels.size();
      c.members.push_back(p);
      c.labels.insert(c.labels.end(), lab, lab + stride_);
      c.matched.push_back(f.matched[m]);
      int* nl = &c.labels[base];
      int fresh = max_blocks_ + position;
      for (int q = 0; q < n_roots; ++q) fresh = std::min(fresh, q < 64 ? roots[q] : big[q - 64]);
      if (n_roots > 0) {
        for (int s = 0; s < stride_; ++s) {
          if (nl[s] < 0) continue;
          for (int q = 0; q < n_roots; ++q)
            if (nl[s] == (q < 64 ? roots[q] : big[q - 64])) {
              nl[s] = fresh;
              break;
            }
        }
      }
      nl[max_blocks_ + position] = fresh;
    }
    return c;
  }

  void expand(const Frame& f, std::vector<int>& chosen, int j, std::vector<char>& keep) const {
    Frame c = child(f, j, static_cast<int>(chosen.size()));
    if (c.members.empty() || !open_members(c, keep)) return;
    chosen.push_back(j);
    collect_winners(c, chosen, keep);
    if (static_cast<int>(chosen.size()) < ctx_.vc_bound() && open_members(c, keep))
      for (int next = j + 1; next < static_cast<int>(pool_.size()); ++next) expand(c, chosen, next, keep);
    chosen.pop_back();
  }

  const NodeContext& ctx_;
  std::vector<PartialSolution> ranked_;
  std::vector<VertexSet> nout_;
  std::vector<Prepared> prep_;
  std::vector<VcElement> pool_;
  std::vector<int> attach_off_, attach_len_, attach_data_;
  std::vector<char> keep_;
  int max_blocks_ = 0;
  int stride_ = 0;
};

}  // namespace detail

/// reduce(𝒜): for every index i and every ~_i class among the members of 𝒜
/// that are partial solutions for i, keeps one member of maximum weight
/// (ties: lexicographically smallest). Returns the union over all i.
inline SolutionTable reduce(const SolutionTable& table, const NodeContext& ctx, int threads = 1) {
  detail::PrunedReducer r(table, ctx);
  return r.run(threads);
}

struct NodeEvent {
  int node = -1;
  const NodeContext* ctx = nullptr;
  const SolutionTable* merged = nullptr;   // 𝒜_a ⊗ 𝒜_b (leaves: 2^{V_x})
  const SolutionTable* reduced = nullptr;  // 𝒜_x
};

struct SolveOptions {
  int threads = 1;
  std::function<void(const NodeEvent&)> observer;
};

struct SolveResult {
  std::int64_t weight = 0;  // maximum weight of an S-forest
  VertexSet sforest;
  VertexSet deletion;
  std::size_t max_table = 0;
};

/// Maximum-weight S-forest by the bottom-up representative-set DP over l.
inline SolveResult solve(const Instance& inst, const RootedLayout& l, const SolveOptions& opt = {}) {
  inst.validate();
  if (l.n() != inst.graph.n()) throw InputError("layout and graph sizes differ");
  std::vector<SolutionTable> tables(static_cast<std::size_t>(l.node_count()));
  SolveResult res;
  for (int x : l.post_order()) {
    const auto& nd = l.node(x);
    if (nd.is_leaf()) {
      const Vertex v = nd.vertex;
      tables[x] = SolutionTable({{VertexSet{}, 0}, {VertexSet{v}, inst.weights[v]}});
      if (opt.observer) {
        NodeContext ctx = make_context(inst, l.below(x));
        opt.observer(NodeEvent{x, &ctx, &tables[x], &tables[x]});
      }
    } else {
      SolutionTable merged = merge(tables[nd.left], tables[nd.right]);
      NodeContext ctx = make_context(inst, l.below(x));
      tables[x] = reduce(merged, ctx, opt.threads);
      if (opt.observer) opt.observer(NodeEvent{x, &ctx, &merged, &tables[x]});
      tables[nd.left] = SolutionTable{};
      tables[nd.right] = SolutionTable{};
    }
    res.max_table = std::max(res.max_table, tables[x].size());
  }
  const auto& root = tables[l.root()].solutions();
  const PartialSolution* pick = nullptr;
  for (const auto& p : root)
    if (is_s_forest(inst.graph, p.vertices, inst.s) && (!pick || detail::better(p, *pick))) pick = &p;
  if (!pick) throw std::logic_error("root table holds no S-forest");
  res.weight = pick->weight;
  res.sforest = pick->vertices;
  res.deletion = inst.graph.vertices() - pick->vertices;
  return res;
}

}  // namespace sfvs
