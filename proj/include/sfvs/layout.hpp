#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sfvs/graph.hpp"

namespace sfvs {

/// Rooted binary tree whose leaves are in bijection with the graph's vertices.
class RootedLayout {
public:
  struct Node {
    int left = -1;
    int right = -1;
    int parent = -1;
    Vertex vertex = -1;  // leaves only

    [[nodiscard]] bool is_leaf() const { return left == -1; }
  };

  RootedLayout() = default;

  /// Validates shape and leaf bijection over 0..n-1; throws InputError.
  RootedLayout(std::vector<Node> nodes, int root, int n) : nodes_(std::move(nodes)), root_(root), n_(n) {
    if (n <= 0) throw InputError("layout needs at least one vertex");
    if (root < 0 || root >= static_cast<int>(nodes_.size())) throw InputError("layout root out of range");
    leaf_of_.assign(static_cast<std::size_t>(n), -1);
    int leaves = 0;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      const Node& nd = nodes_[i];
      if ((nd.left == -1) != (nd.right == -1)) throw InputError("layout node with exactly one child");
      if (nd.is_leaf()) {
        if (nd.vertex < 0 || nd.vertex >= n) throw InputError("layout leaf vertex out of range");
        if (leaf_of_[nd.vertex] != -1) throw InputError("duplicate leaf for vertex " + std::to_string(nd.vertex));
        leaf_of_[nd.vertex] = i;
        ++leaves;
      }
    }
    if (leaves != n) throw InputError("layout leaves do not cover every vertex");
    if (static_cast<int>(nodes_.size()) != 2 * n - 1) throw InputError("layout is not a binary tree over n leaves");
    below_.assign(nodes_.size(), VertexSet{});
    std::vector<char> seen(nodes_.size(), 0);
    fill_below(root_, -1, seen);
    for (char c : seen)
      if (!c) throw InputError("layout has nodes unreachable from the root");
  }

  [[nodiscard]] int root() const { return root_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int node_count() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] const Node& node(int x) const { return nodes_.at(static_cast<std::size_t>(x)); }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
  [[nodiscard]] int leaf_of(Vertex v) const { return leaf_of_.at(static_cast<std::size_t>(v)); }

  /// Children before parents.
  [[nodiscard]] std::vector<int> post_order() const {
    std::vector<int> out;
    std::vector<std::pair<int, bool>> st{{root_, false}};
    while (!st.empty()) {
      auto [x, expanded] = st.back();
      st.pop_back();
      if (expanded || nodes_[x].is_leaf()) {
        out.push_back(x);
        continue;
      }
      st.push_back({x, true});
      st.push_back({nodes_[x].right, false});
      st.push_back({nodes_[x].left, false});
    }
    return out;
  }

  /// V_x: vertices mapped to leaves below x. Throws std::out_of_range on unknown x.
  [[nodiscard]] const VertexSet& below(int x) const { return below_.at(static_cast<std::size_t>(x)); }

private:
  void fill_below(int x, int parent, std::vector<char>& seen) {
    if (x < 0 || x >= static_cast<int>(nodes_.size())) throw InputError("layout child out of range");
    if (seen[x]) throw InputError("layout is not a tree");
    seen[x] = 1;
    nodes_[x].parent = parent;
    if (nodes_[x].is_leaf()) {
      below_[x] = VertexSet{nodes_[x].vertex};
      return;
    }
    fill_below(nodes_[x].left, x, seen);
    fill_below(nodes_[x].right, x, seen);
    below_[x] = below_[nodes_[x].left] | below_[nodes_[x].right];
  }

  std::vector<Node> nodes_;
  std::vector<VertexSet> below_;
  std::vector<int> leaf_of_;
  int root_ = -1;
  int n_ = 0;
};

inline const VertexSet& vertex_set_below(const RootedLayout& l, int x) { return l.below(x); }

/// Left-deep caterpillar: the deepest internal node joins order[0] and order[1].
inline RootedLayout layout_from_order(const std::vector<Vertex>& order) {
  const int n = static_cast<int>(order.size());
  if (n == 0) throw InputError("empty vertex order");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) throw InputError("order is not a permutation");
    seen[v] = 1;
  }
  std::vector<RootedLayout::Node> nodes;
  nodes.push_back({-1, -1, -1, order[0]});
  int top = 0;
  for (int i = 1; i < n; ++i) {
    nodes.push_back({-1, -1, -1, order[i]});
    const int leaf = static_cast<int>(nodes.size()) - 1;
    nodes.push_back({top, leaf, -1, -1});
    top = static_cast<int>(nodes.size()) - 1;
  }
  return RootedLayout(std::move(nodes), top, n);
}

inline RootedLayout identity_layout(int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  return layout_from_order(order);
}

/// Canonical text: leaves are vertex names, internal nodes "(left,right)", no whitespace.
inline std::string serialize_layout(const RootedLayout& l, const Graph& g) {
  std::string out;
  auto rec = [&](auto&& self, int x) -> void {
    const auto& nd = l.node(x);
    if (nd.is_leaf()) {
      out += g.name(nd.vertex);
      return;
    }
    out += '(';
    self(self, nd.left);
    out += ',';
    self(self, nd.right);
    out += ')';
  };
  rec(rec, l.root());
  return out;
}

/// Parses the nested-parentheses layout format against g's vertex names.
inline RootedLayout parse_layout(std::string_view text, const Graph& g) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::size_t pos = 0;
  std::vector<RootedLayout::Node> nodes;
  std::vector<char> used(static_cast<std::size_t>(g.n()), 0);

  auto parse_node = [&](auto&& self, int depth) -> int {
    if (depth > 4 * VertexSet::kMaxVertices) throw InputError("layout nesting too deep");
    if (pos >= compact.size()) throw InputError("unexpected end of layout text");
    if (compact[pos] == '(') {
      ++pos;
      int left = self(self, depth + 1);
      if (pos >= compact.size() || compact[pos] != ',') throw InputError("expected ',' in layout at offset " + std::to_string(pos));
      ++pos;
      int right = self(self, depth + 1);
      if (pos >= compact.size() || compact[pos] != ')') throw InputError("unbalanced parentheses in layout");
      ++pos;
      nodes.push_back({left, right, -1, -1});
      return static_cast<int>(nodes.size()) - 1;
    }
    std::size_t start = pos;
    while (pos < compact.size() && compact[pos] != '(' && compact[pos] != ')' && compact[pos] != ',') ++pos;
    std::string name = compact.substr(start, pos - start);
    if (name.empty()) throw InputError("empty leaf name in layout at offset " + std::to_string(start));
    Vertex v = g.find(name);
    if (v == -1) throw InputError("unknown vertex name in layout: " + name);
    if (used[v]) throw InputError("duplicate leaf in layout: " + name);
    used[v] = 1;
    nodes.push_back({-1, -1, -1, v});
    return static_cast<int>(nodes.size()) - 1;
  };

  int root = parse_node(parse_node, 0);
  if (pos != compact.size()) throw InputError("trailing characters after layout");
  if (static_cast<int>(nodes.size()) != 2 * g.n() - 1) throw InputError("layout does not cover every vertex");
  return RootedLayout(std::move(nodes), root, g.n());
}

}  // namespace sfvs
