#pragma once

// Seeded generators. All randomness comes from std::mt19937_64 (its output
// sequence is fixed by the C++ standard) mapped to integers and unit reals
// by the helpers below rather than <random> distributions, whose outputs
// differ between standard libraries.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <utility>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/ktree.hpp"
#include "p3t/plane.hpp"

namespace p3t {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); draws above the last full multiple of bound are rejected.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct GeneratedTree {
  PlaneGraph plane;
  Pes pes;
};

namespace detail {

// Inserts a new vertex into the triangular face walk (a, b, c): at each
// corner the new neighbor goes right after the walk successor.
inline void stack_into(Rotation& rot, Vertex a, Vertex b, Vertex c, Vertex u) {
  auto insert_after = [&](Vertex at, Vertex after, Vertex what) {
    auto& r = rot[static_cast<std::size_t>(at)];
    auto it = std::find(r.begin(), r.end(), after);
    ensure(it != r.end(), "corner not found while stacking");
    r.insert(it + 1, what);
  };
  insert_after(a, b, u);
  insert_after(b, c, u);
  insert_after(c, a, u);
  rot[static_cast<std::size_t>(u)] = {a, b, c};
}

}  // namespace detail

/// Random stacked triangulation: start from triangle 0,1,2 and repeatedly
/// put the next vertex into a uniformly chosen face. The outer face is the
/// one on dart 1->0.
inline GeneratedTree gen_plane_3tree(int n, std::uint64_t seed) {
  if (n < 3) fail(ErrorKind::TooSmall, "a plane 3-tree needs at least 3 vertices");
  Rng rng(seed);
  Graph g(n);
  Rotation rot(static_cast<std::size_t>(n));
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  rot[0] = {1, 2};
  rot[1] = {2, 0};
  rot[2] = {0, 1};
  std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}, {0, 2, 1}};
  for (Vertex u = 3; u < n; ++u) {
    const std::size_t pick = static_cast<std::size_t>(rng.below(faces.size()));
    auto [a, b, c] = faces[pick];
    detail::stack_into(rot, a, b, c, u);
    g.add_edge(u, a);
    g.add_edge(u, b);
    g.add_edge(u, c);
    faces[pick] = {a, b, u};
    faces.push_back({b, c, u});
    faces.push_back({c, a, u});
  }
  GeneratedTree out;
  out.plane = PlaneGraph::connected(std::move(g), std::move(rot), {1, 0});
  out.pes.k = 3;
  for (Vertex v = 0; v < n; ++v) out.pes.order.push_back(v);
  return out;
}

/// Keeps each edge independently with probability `keep` (edges visited in
/// sorted order, one draw each); all vertices stay.
inline PlaneGraph subsample_plane(const PlaneGraph& p, double keep, std::uint64_t seed, EdgeList* dropped = nullptr) {
  Rng rng(seed);
  EdgeList drop;
  for (const Edge& e : p.graph().edges())
    if (!(rng.unit() < keep)) drop.push_back(e);
  if (dropped) *dropped = drop;
  return delete_edges_plane(p, drop);
}

/// Graph on n labeled vertices whose edge set is given by the bits of `mask`
/// over the pairs (0,1), (0,2), ..., (n-2,n-1).
inline Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1u) g.add_edge(u, v);
  return g;
}

/// All 2^(n(n-1)/2) simple graphs on n labeled vertices, in mask order.
class GraphEnumeration {
 public:
  explicit GraphEnumeration(int n) : n_(n) {
    if (n < 0 || n > 7) fail(ErrorKind::TooLarge, "enumeration limited to 7 vertices");
  }

  std::uint64_t size() const { return std::uint64_t{1} << (n_ * (n_ - 1) / 2); }

  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(int n, std::uint64_t mask) : n_(n), mask_(mask) {}
    Graph operator*() const { return graph_from_mask(n_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator==(const iterator& o) const { return mask_ == o.mask_; }
    bool operator!=(const iterator& o) const { return mask_ != o.mask_; }
    std::uint64_t mask() const { return mask_; }

   private:
    int n_;
    std::uint64_t mask_;
  };

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, size()}; }

 private:
  int n_;
};

inline GraphEnumeration enum_graphs(int n) { return GraphEnumeration(n); }

}  // namespace p3t
