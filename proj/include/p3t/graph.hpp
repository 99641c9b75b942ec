#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "p3t/error.hpp"

namespace p3t {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

inline VertexSet make_vertex_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

inline EdgeList normalized(EdgeList es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return es;
}

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(check_count(n))) {}
  Graph(int n, const EdgeList& edges) : Graph(n) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
  }

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return m_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[index(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[index(v)].size()); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a == b || !valid(a) || !valid(b)) return false;
    const auto& na = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(na.begin(), na.end(), b);
  }

  /// Inserts {a,b}; returns false if it was already present. Loops are rejected.
  bool add_edge(Vertex a, Vertex b) {
    index(a);
    index(b);
    if (a == b) fail(ErrorKind::BadVertex, "loop at vertex " + std::to_string(a));
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b) return false;
    na.insert(it, b);
    auto& nb = adj_[static_cast<std::size_t>(b)];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++m_;
    return true;
  }

  bool remove_edge(Vertex a, Vertex b) {
    if (!has_edge(a, b)) return false;
    auto& na = adj_[static_cast<std::size_t>(a)];
    na.erase(std::lower_bound(na.begin(), na.end(), b));
    auto& nb = adj_[static_cast<std::size_t>(b)];
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --m_;
    return true;
  }

  EdgeList edges() const {
    EdgeList out;
    out.reserve(m_);
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : adj_[static_cast<std::size_t>(u)])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool valid(Vertex v) const { return v >= 0 && v < n(); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  static int check_count(int n) {
    if (n < 0) fail(ErrorKind::BadVertex, "negative vertex count");
    return n;
  }
  std::size_t index(Vertex v) const {
    if (!valid(v)) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " out of range");
    return static_cast<std::size_t>(v);
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

namespace detail {

// Component labels of g with the vertices flagged in `removed` skipped (label -1).
inline std::vector<int> component_labels(const Graph& g, const std::vector<char>& removed, int* count) {
  std::vector<int> label(static_cast<std::size_t>(g.n()), -1);
  std::vector<Vertex> stack;
  int c = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (removed[static_cast<std::size_t>(s)] || label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (removed[static_cast<std::size_t>(w)] || label[static_cast<std::size_t>(w)] >= 0) continue;
        label[static_cast<std::size_t>(w)] = c;
        stack.push_back(w);
      }
    }
    ++c;
  }
  if (count) *count = c;
  return label;
}

inline std::vector<VertexSet> group_labels(const std::vector<int>& label, int count) {
  std::vector<VertexSet> parts(static_cast<std::size_t>(count));
  for (std::size_t v = 0; v < label.size(); ++v)
    if (label[v] >= 0) parts[static_cast<std::size_t>(label[v])].push_back(static_cast<Vertex>(v));
  return parts;
}

}  // namespace detail

/// Components of g minus `removed`, each sorted, ordered by smallest vertex.
inline std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
  std::vector<char> mask(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : removed) {
    if (!g.valid(v)) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  int count = 0;
  auto label = detail::component_labels(g, mask, &count);
  return detail::group_labels(label, count);
}

inline std::vector<VertexSet> connected_components(const Graph& g) { return components_without(g, {}); }

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Cut vertices of a connected graph (iterative Hopcroft-Tarjan lowpoint).
inline VertexSet articulation_vertices(const Graph& g) {
  if (!is_connected(g)) fail(ErrorKind::DisconnectedInput, "articulation_vertices needs a connected graph");
  const int n = g.n();
  VertexSet out;
  if (n <= 2) return out;
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<char> is_cut(static_cast<std::size_t>(n), 0);
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, -1, 0}};
  disc[0] = low[0] = 0;
  int timer = 1;
  int root_children = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      Vertex w = nb[f.next++];
      auto wi = static_cast<std::size_t>(w);
      if (disc[wi] < 0) {
        disc[wi] = low[wi] = timer++;
        if (f.v == 0) ++root_children;
        stack.push_back({w, f.v, 0});
      } else if (w != f.parent) {
        low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[wi]);
      }
      continue;
    }
    Vertex v = f.v, p = f.parent;
    stack.pop_back();
    if (p >= 0) {
      auto pi = static_cast<std::size_t>(p), vi = static_cast<std::size_t>(v);
      low[pi] = std::min(low[pi], low[vi]);
      if (p != 0 && low[vi] >= disc[pi]) is_cut[pi] = 1;
    }
  }
  if (root_children > 1) is_cut[0] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

inline bool is_two_connected(const Graph& g) {
  return g.n() >= 3 && is_connected(g) && articulation_vertices(g).empty();
}

/// All separating pairs of a 2-connected graph, by exhaustive enumeration.
inline std::vector<std::pair<Vertex, Vertex>> two_cuts(const Graph& g) {
  if (!is_two_connected(g)) fail(ErrorKind::NotTwoConnected, "two_cuts needs a 2-connected graph");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex a = 0; a < g.n(); ++a)
    for (Vertex b = a + 1; b < g.n(); ++b)
      if (components_without(g, {a, b}).size() > 1) out.emplace_back(a, b);
  return out;
}

/// Lexicographically first separating pair of a 2-connected graph, found by
/// removing each vertex in turn and looking for a cut vertex in the rest.
inline std::optional<std::pair<Vertex, Vertex>> first_two_cut(const Graph& g) {
  std::optional<std::pair<Vertex, Vertex>> best;
  for (Vertex a = 0; a < g.n(); ++a) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n(); ++v)
      if (v != a) keep.push_back(v);
    Graph h(g.n() - 1);
    for (const Edge& e : g.edges())
      if (e.u != a && e.v != a) h.add_edge(e.u - (e.u > a), e.v - (e.v > a));
    for (Vertex c : articulation_vertices(h)) {
      Vertex b = keep[static_cast<std::size_t>(c)];
      std::pair<Vertex, Vertex> cand{std::min(a, b), std::max(a, b)};
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

/// Subgraph induced by `s`, relabeled to 0..|s|-1; `to_parent[i]` is the
/// original id of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
  std::vector<Vertex> to_child;  // -1 for vertices outside s
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  InducedSubgraph out;
  out.to_child.assign(static_cast<std::size_t>(g.n()), -1);
  for (Vertex v : s) {
    if (!g.valid(v)) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " out of range");
    if (out.to_child[static_cast<std::size_t>(v)] >= 0) continue;
    out.to_child[static_cast<std::size_t>(v)] = static_cast<Vertex>(out.to_parent.size());
    out.to_parent.push_back(v);
  }
  out.graph = Graph(static_cast<int>(out.to_parent.size()));
  for (Vertex v : out.to_parent)
    for (Vertex w : g.neighbors(v)) {
      Vertex cv = out.to_child[static_cast<std::size_t>(v)], cw = out.to_child[static_cast<std::size_t>(w)];
      if (cw >= 0 && cv < cw) out.graph.add_edge(cv, cw);
    }
  return out;
}

inline bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

}  // namespace p3t
