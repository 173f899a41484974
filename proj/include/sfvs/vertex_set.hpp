#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfvs {

using Vertex = int;

/// Fixed-capacity bit set over vertex ids 0..kMaxVertices-1.
///
/// Every set in the solver (X, Y, V_x, blocks, neighborhoods) is a VertexSet.
/// Capacity is fixed so sets are trivially copyable and never allocate.
class VertexSet {
public:
  static constexpr int kWords = 4;
  static constexpr int kMaxVertices = 64 * kWords;

  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }

  static VertexSet range(int n) {
    VertexSet s;
    for (int w = 0; w < kWords && n > 0; ++w, n -= 64)
      s.words_[w] = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return s;
  }

  static VertexSet of(const std::vector<Vertex>& vs) {
    VertexSet s;
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  void insert(Vertex v) { words_[word(v)] |= bit(v); }
  void erase(Vertex v) { words_[word(v)] &= ~bit(v); }
  [[nodiscard]] bool contains(Vertex v) const { return (words_[word(v)] & bit(v)) != 0; }

  [[nodiscard]] int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  [[nodiscard]] bool intersects(const VertexSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  [[nodiscard]] bool subset_of(const VertexSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  /// Smallest element, or -1 when empty.
  [[nodiscard]] Vertex first() const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i]) return 64 * i + std::countr_zero(words_[i]);
    return -1;
  }
  /// Smallest element greater than v, or -1.
  [[nodiscard]] Vertex next(Vertex v) const {
    ++v;
    if (v >= kMaxVertices) return -1;
    int i = word(v);
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << (v & 63));
    while (true) {
      if (w) return 64 * i + std::countr_zero(w);
      if (++i == kWords) return -1;
      w = words_[i];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(64 * i + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// Order used for "lexicographically smallest": compare sorted element lists.
  friend bool lex_less(const VertexSet& a, const VertexSet& b) {
    Vertex x = a.first(), y = b.first();
    while (x != -1 && y != -1) {
      if (x != y) return x < y;
      x = a.next(x);
      y = b.next(y);
    }
    return x == -1 && y != -1;
  }

  [[nodiscard]] std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  [[nodiscard]] const std::array<std::uint64_t, kWords>& words() const { return words_; }

private:
  static int word(Vertex v) {
    if (v < 0 || v >= kMaxVertices) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
    return v >> 6;
  }
  static std::uint64_t bit(Vertex v) { return std::uint64_t{1} << (v & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace sfvs
