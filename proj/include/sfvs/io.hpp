#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sfvs/graph.hpp"
#include "sfvs/intervals.hpp"
#include "sfvs/layout.hpp"

namespace sfvs {

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::int64_t parse_int(const std::string& t, int line) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || t.empty()) throw InputError("line " + std::to_string(line) + ": bad integer '" + t + "'");
  return v;
}

}  // namespace detail

/// Reads the text graph format:
///   c <comment>
///   p sfvs <n> <m>
///   v <name> <weight> <0|1>     (one per vertex, ids in order of appearance)
///   e <name> <name>
inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  std::int64_t n = 0, m = 0;
  std::vector<std::string> names;
  std::unordered_map<std::string, Vertex> ids;
  std::vector<std::int64_t> weights;
  VertexSet s;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  std::vector<int> edge_lines;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::tokens(line);
    if (t.empty() || t[0] == "c") continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (t[0] == "p") {
      if (header) throw InputError(where + "duplicate header");
      if (t.size() != 4 || t[1] != "sfvs") throw InputError(where + "expected 'p sfvs <n> <m>'");
      n = detail::parse_int(t[2], lineno);
      m = detail::parse_int(t[3], lineno);
      if (n < 0 || m < 0) throw InputError(where + "negative count");
      if (n > VertexSet::kMaxVertices) throw SizeGuardError(where + "more than " + std::to_string(VertexSet::kMaxVertices) + " vertices");
      header = true;
    } else if (!header) {
      throw InputError(where + "record before header");
    } else if (t[0] == "v") {
      if (t.size() != 4) throw InputError(where + "expected 'v <name> <weight> <0|1>'");
      if (ids.contains(t[1])) throw InputError(where + "duplicate vertex name " + t[1]);
      if (static_cast<std::int64_t>(names.size()) == n) throw InputError(where + "more vertices than declared");
      const auto w = detail::parse_int(t[2], lineno);
      const auto flag = detail::parse_int(t[3], lineno);
      if (flag != 0 && flag != 1) throw InputError(where + "S flag must be 0 or 1");
      const Vertex v = static_cast<Vertex>(names.size());
      ids.emplace(t[1], v);
      names.push_back(t[1]);
      weights.push_back(w);
      if (flag) s.insert(v);
    } else if (t[0] == "e") {
      if (t.size() != 3) throw InputError(where + "expected 'e <name> <name>'");
      raw_edges.emplace_back(t[1], t[2]);
      edge_lines.push_back(lineno);
    } else {
      throw InputError(where + "unknown record '" + t[0] + "'");
    }
  }
  if (!header) throw InputError("missing 'p sfvs' header");
  if (static_cast<std::int64_t>(names.size()) != n) throw InputError("vertex count differs from header");
  if (static_cast<std::int64_t>(raw_edges.size()) != m) throw InputError("edge count differs from header");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t k = 0; k < raw_edges.size(); ++k) {
    auto a = ids.find(raw_edges[k].first), b = ids.find(raw_edges[k].second);
    if (a == ids.end() || b == ids.end())
      throw InputError("line " + std::to_string(edge_lines[k]) + ": unknown vertex in edge");
    edges.emplace_back(a->second, b->second);
  }
  Instance inst{Graph::from_edges(static_cast<int>(n), edges, std::move(names)), s, std::move(weights)};
  inst.validate();
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  const Graph& g = inst.graph;
  out << "p sfvs " << g.n() << ' ' << g.m() << '\n';
  for (Vertex v = 0; v < g.n(); ++v)
    out << "v " << g.name(v) << ' ' << inst.weights[v] << ' ' << (inst.s.contains(v) ? 1 : 0) << '\n';
  for (auto [u, v] : g.edges()) out << "e " << g.name(u) << ' ' << g.name(v) << '\n';
  return out.str();
}

/// Interval model: "p intervals <n>" then "i <name> <left> <right>" per vertex.
struct IntervalModel {
  std::vector<std::string> names;
  std::vector<Interval> intervals;
};

inline IntervalModel parse_intervals(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::int64_t n = -1;
  IntervalModel out;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::tokens(line);
    if (t.empty() || t[0] == "c") continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (t[0] == "p") {
      if (n >= 0 || t.size() != 3 || t[1] != "intervals") throw InputError(where + "expected one 'p intervals <n>'");
      n = detail::parse_int(t[2], lineno);
    } else if (t[0] == "i" && n >= 0) {
      if (t.size() != 4) throw InputError(where + "expected 'i <name> <left> <right>'");
      out.names.push_back(t[1]);
      out.intervals.push_back({detail::parse_int(t[2], lineno), detail::parse_int(t[3], lineno)});
    } else {
      throw InputError(where + "unexpected record");
    }
  }
  if (n < 0 || static_cast<std::int64_t>(out.intervals.size()) != n) throw InputError("interval count differs from header");
  return out;
}

inline std::string serialize_intervals(const IntervalModel& m) {
  std::ostringstream out;
  out << "p intervals " << m.intervals.size() << '\n';
  for (std::size_t k = 0; k < m.intervals.size(); ++k)
    out << "i " << m.names[k] << ' ' << m.intervals[k].left << ' ' << m.intervals[k].right << '\n';
  return out.str();
}

namespace detail {

/// Bernoulli(p) from the top 53 bits; independent of the standard library's distributions.
inline bool coin(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace detail

/// G(n, p) with each vertex in S with probability 1/3 and unit weights.
inline Instance generate_random(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InputError("generate: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("generate: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (detail::coin(rng, p)) edges.emplace_back(u, v);
  Instance inst{Graph::from_edges(n, edges), {}, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)};
  for (int v = 0; v < n; ++v)
    if (detail::below(rng, 3) == 0) inst.s.insert(v);
  return inst;
}

struct IntervalInstance {
  IntervalModel model;
  Instance inst;
  RootedLayout layout;
};

/// n random intervals with left end in [0, 3n) and length in [0, n/2];
/// S with probability 1/3, unit weights, caterpillar by left end.
inline IntervalInstance generate_interval(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("generate: n must be positive");
  std::mt19937_64 rng(seed);
  IntervalInstance out;
  for (int v = 0; v < n; ++v) {
    const auto left = static_cast<std::int64_t>(detail::below(rng, 3 * static_cast<std::uint64_t>(n)));
    const auto len = static_cast<std::int64_t>(detail::below(rng, static_cast<std::uint64_t>(n / 2 + 1)));
    out.model.names.push_back("v" + std::to_string(v));
    out.model.intervals.push_back({left, left + len});
  }
  out.inst.graph = interval_graph(out.model.intervals, out.model.names);
  out.inst.weights.assign(static_cast<std::size_t>(n), 1);
  for (int v = 0; v < n; ++v)
    if (detail::below(rng, 3) == 0) out.inst.s.insert(v);
  out.layout = interval_layout(out.inst.graph, out.model.intervals);
  return out;
}

}  // namespace sfvs
