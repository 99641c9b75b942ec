#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/plane.hpp"

namespace p3t {

/// Perfect elimination scheme read in growth order: the first k vertices
/// form the base clique, every later vertex is simplicial among its
/// predecessors.
struct Pes {
  std::vector<Vertex> order;
  int k = 3;

  std::vector<Vertex> base() const {
    return {order.begin(), order.begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(order.size()))};
  }
  friend bool operator==(const Pes&, const Pes&) = default;
};

inline std::vector<int> pes_positions(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
  if (order.size() != static_cast<std::size_t>(g.n())) fail(ErrorKind::NotPermutation, "order length differs from n");
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    if (!g.valid(v) || pos[static_cast<std::size_t>(v)] >= 0) fail(ErrorKind::NotPermutation, "order is not a permutation");
    pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  return pos;
}

/// Checks the PES conditions; with `strict_ktree` also that the base is a
/// k-clique and every later vertex has exactly k earlier neighbors.
inline bool verify_pes(const Graph& g, const Pes& p, bool strict_ktree) {
  auto pos = pes_positions(g, p.order);
  const auto k = static_cast<std::size_t>(std::max(p.k, 0));
  const std::size_t n = p.order.size();
  if (strict_ktree && n < k) return false;
  const std::size_t base_len = std::min(k, n);
  std::vector<Vertex> base(p.order.begin(), p.order.begin() + static_cast<std::ptrdiff_t>(base_len));
  if (!is_clique(g, base)) return false;
  std::vector<Vertex> back;
  for (std::size_t i = base_len; i < n; ++i) {
    Vertex v = p.order[i];
    back.clear();
    for (Vertex w : g.neighbors(v))
      if (pos[static_cast<std::size_t>(w)] < static_cast<int>(i)) back.push_back(w);
    if (strict_ktree && back.size() != k) return false;
    if (!is_clique(g, back)) return false;
  }
  return true;
}

namespace detail {

// Greedy simplicial elimination of degree-k vertices outside `keep`;
// returns the elimination order or nullopt when it gets stuck.
inline std::optional<std::vector<Vertex>> eliminate_ktree(const Graph& g, int k, const std::vector<Vertex>& keep) {
  const int n = g.n();
  std::vector<char> protect(static_cast<std::size_t>(n), 0), gone(static_cast<std::size_t>(n), 0);
  for (Vertex v : keep) protect[static_cast<std::size_t>(v)] = 1;
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> heap;
  for (Vertex v = 0; v < n; ++v)
    if (!protect[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] == k) heap.push(v);
  std::vector<Vertex> elim;
  std::vector<Vertex> nb;
  const auto target = static_cast<std::size_t>(n) - keep.size();
  while (!heap.empty() && elim.size() < target) {
    Vertex v = heap.top();
    heap.pop();
    auto vi = static_cast<std::size_t>(v);
    if (gone[vi] || deg[vi] != k) continue;
    nb.clear();
    for (Vertex w : g.neighbors(v))
      if (!gone[static_cast<std::size_t>(w)]) nb.push_back(w);
    if (!is_clique(g, nb)) continue;
    gone[vi] = 1;
    elim.push_back(v);
    for (Vertex w : nb) {
      auto wi = static_cast<std::size_t>(w);
      if (--deg[wi] == k && !protect[wi]) heap.push(w);
    }
  }
  if (elim.size() != target) return std::nullopt;
  return elim;
}

}  // namespace detail

/// Re-grows a 3-tree from the given triangle (in the given order), by
/// protected greedy elimination of degree-3 simplicial vertices.
inline Pes reroot_pes(const Graph& g, const std::vector<Vertex>& triangle) {
  if (triangle.size() != 3 || !is_clique(g, triangle) || triangle[0] == triangle[1] || triangle[1] == triangle[2] ||
      triangle[0] == triangle[2])
    fail(ErrorKind::NotATriangle, "requested base is not a triangle of the graph");
  if (g.n() < 3 || g.num_edges() != static_cast<std::size_t>(3 * g.n() - 6))
    fail(ErrorKind::NotAThreeTree, "edge count is not 3n-6");
  auto elim = detail::eliminate_ktree(g, 3, triangle);
  if (!elim) fail(ErrorKind::NotAThreeTree, "greedy elimination got stuck");
  Pes p;
  p.k = 3;
  p.order = triangle;
  p.order.insert(p.order.end(), elim->rbegin(), elim->rend());
  if (!verify_pes(g, p, true)) fail(ErrorKind::NotAThreeTree, "elimination order is not a 3-tree witness");
  return p;
}

/// Some strict 3-tree PES of g, or nullopt if g is not a 3-tree.
inline std::optional<Pes> find_3tree_pes(const Graph& g) {
  const int n = g.n();
  if (n < 3 || g.num_edges() != static_cast<std::size_t>(3 * n - 6)) return std::nullopt;
  if (n == 3) return Pes{{0, 1, 2}, 3};
  // Any triangle can serve as the base; pick one through vertex 0.
  const auto& n0 = g.neighbors(0);
  for (Vertex a : n0)
    for (Vertex b : g.neighbors(a))
      if (b > a && g.has_edge(0, b)) {
        auto elim = detail::eliminate_ktree(g, 3, {0, a, b});
        if (!elim) return std::nullopt;
        Pes p{{0, a, b}, 3};
        p.order.insert(p.order.end(), elim->rbegin(), elim->rend());
        if (!verify_pes(g, p, true)) return std::nullopt;
        return p;
      }
  return std::nullopt;
}

/// Accepts exactly the plane triangulations whose graph is a 3-tree, i.e.
/// drawings obtainable from a triangle by stacking degree-3 vertices into faces.
inline std::optional<Pes> is_stacked_plane_3tree(const PlaneGraph& p) {
  const int n = p.n();
  if (n < 3 || p.graph().num_edges() != static_cast<std::size_t>(3 * n - 6)) return std::nullopt;
  for (const Face& f : p.faces())
    if (!f.is_triangle()) return std::nullopt;
  return find_3tree_pes(p.graph());
}

}  // namespace p3t
