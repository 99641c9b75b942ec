#pragma once

// Combinatorial plane drawings.
//
// A drawing is a rotation system (counterclockwise neighbor cycle per
// vertex) plus, for disconnected graphs, the grouping of boundary walks into
// faces. Faces are traced with one fixed rule: after arriving at v along
// (u, v), leave along (v, w) where w is the predecessor of u in the CCW cycle
// at v. Under this rule every face walk runs counterclockwise as seen from
// inside the face, on the sphere. The designated outer face is only a label;
// the face structure itself does not depend on it.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"

namespace p3t {

using FaceId = int;
using Rotation = std::vector<std::vector<Vertex>>;

struct Dart {
  Vertex from = 0;
  Vertex to = 0;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

/// Names a boundary walk: a dart on it, or an isolated vertex (to == -1).
struct WalkRef {
  Vertex v = 0;
  Vertex to = -1;

  static WalkRef dart(Vertex a, Vertex b) { return {a, b}; }
  static WalkRef isolated(Vertex a) { return {a, -1}; }
  bool is_isolated() const { return to < 0; }

  friend auto operator<=>(const WalkRef&, const WalkRef&) = default;
};

struct Face {
  FaceId id = 0;
  std::vector<std::vector<Dart>> walks;  // each starts at its smallest dart
  VertexSet isolated;

  std::size_t boundary_length() const {
    std::size_t len = 0;
    for (const auto& w : walks) len += w.size();
    return len;
  }
  bool is_triangle() const { return walks.size() == 1 && walks[0].size() == 3 && isolated.empty(); }
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> vs(isolated);
    for (const auto& w : walks)
      for (const Dart& d : w) vs.push_back(d.from);
    return make_vertex_set(std::move(vs));
  }
};

namespace detail {

// Flat dart numbering: dart (v, rot[v][i]) has id offset[v] + i.
struct DartIndex {
  std::vector<std::size_t> offset;
  std::vector<Vertex> head;
  std::vector<Vertex> tail;
  std::vector<std::size_t> twin;

  explicit DartIndex(const Rotation& rot) {
    const std::size_t n = rot.size();
    offset.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + rot[v].size();
    const std::size_t total = offset[n];
    head.resize(total);
    tail.resize(total);
    twin.resize(total);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < rot[v].size(); ++i) {
        std::size_t d = offset[v] + i;
        tail[d] = static_cast<Vertex>(v);
        head[d] = rot[v][i];
      }
    for (std::size_t d = 0; d < total; ++d) {
      const auto w = static_cast<std::size_t>(head[d]);
      if (w >= n) fail(ErrorKind::NotPlanarRotation, "rotation names a missing vertex");
      const auto& rw = rot[w];
      auto it = std::find(rw.begin(), rw.end(), tail[d]);
      if (it == rw.end()) fail(ErrorKind::NotPlanarRotation, "rotation is not symmetric");
      twin[d] = offset[w] + static_cast<std::size_t>(it - rw.begin());
    }
  }

  std::size_t size() const { return head.size(); }

  std::size_t next_in_face(const Rotation& rot, std::size_t d) const {
    const std::size_t t = twin[d];
    const auto v = static_cast<std::size_t>(head[d]);
    const std::size_t deg = rot[v].size();
    const std::size_t j = t - offset[v];
    return offset[v] + (j + deg - 1) % deg;
  }
};

inline void check_rotation(const Graph& g, const Rotation& rot) {
  if (rot.size() != static_cast<std::size_t>(g.n()))
    fail(ErrorKind::NotPlanarRotation, "rotation size differs from vertex count");
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<Vertex> r = rot[static_cast<std::size_t>(v)];
    std::sort(r.begin(), r.end());
    if (r != g.neighbors(v))
      fail(ErrorKind::NotPlanarRotation, "rotation at " + std::to_string(v) + " is not a cycle of its neighbors");
  }
}

inline Rotation canonical_rotation(Rotation rot) {
  for (auto& r : rot)
    if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
  return rot;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Orbits of the face-successor permutation; each walk starts at its smallest dart.
inline std::vector<std::vector<Dart>> trace_walks(const Rotation& rot) {
  detail::DartIndex idx(rot);
  std::vector<char> seen(idx.size(), 0);
  std::vector<std::pair<Dart, std::vector<Dart>>> walks;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Dart> walk;
    for (std::size_t d = s; !seen[d]; d = idx.next_in_face(rot, d)) {
      seen[d] = 1;
      walk.push_back({idx.tail[d], idx.head[d]});
    }
    auto m = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), m, walk.end());
    walks.push_back({walk.front(), std::move(walk)});
  }
  std::sort(walks.begin(), walks.end());
  std::vector<std::vector<Dart>> out;
  out.reserve(walks.size());
  for (auto& w : walks) out.push_back(std::move(w.second));
  return out;
}

/// A graph with a combinatorial noncrossing drawing on the sphere and a
/// designated outer face. Immutable; rotations are stored starting at the
/// smallest neighbor, faces are numbered by their smallest walk reference.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  /// `groups` lists walks that share a face (only needed when the graph is
  /// disconnected); unlisted walks are faces on their own.
  PlaneGraph(Graph g, Rotation rot, const std::vector<std::vector<WalkRef>>& groups, WalkRef outer)
      : graph_(std::move(g)) {
    detail::check_rotation(graph_, rot);
    rotation_ = detail::canonical_rotation(std::move(rot));
    build(groups, &outer);
  }

  /// Convenience for connected graphs (or any graph when `groups` suffices).
  static PlaneGraph connected(Graph g, Rotation rot, Dart outer_dart) {
    return PlaneGraph(std::move(g), std::move(rot), {}, WalkRef::dart(outer_dart.from, outer_dart.to));
  }

  const Graph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  const Rotation& rotation() const { return rotation_; }
  const std::vector<Vertex>& rotation(Vertex v) const { return rotation_[static_cast<std::size_t>(v)]; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId f) const { return faces_.at(static_cast<std::size_t>(f)); }
  std::size_t num_faces() const { return faces_.size(); }
  FaceId outer() const { return outer_; }

  FaceId face_of(Dart d) const {
    const auto& r = rotation(d.from);
    auto it = std::find(r.begin(), r.end(), d.to);
    if (it == r.end()) fail(ErrorKind::BadVertex, "no dart " + std::to_string(d.from) + "->" + std::to_string(d.to));
    return dart_face_[offset_[static_cast<std::size_t>(d.from)] + static_cast<std::size_t>(it - r.begin())];
  }

  /// Face holding the isolated vertex v.
  FaceId face_of_isolated(Vertex v) const {
    FaceId f = isolated_face_.at(static_cast<std::size_t>(v));
    if (f < 0) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " is not isolated");
    return f;
  }

  /// Canonical name of a face: its smallest walk reference.
  WalkRef face_ref(FaceId f) const { return face_refs_.at(static_cast<std::size_t>(f)); }

  /// Canonical grouping: walk references of every face with several walks.
  std::vector<std::vector<WalkRef>> groups() const {
    std::vector<std::vector<WalkRef>> out;
    for (const auto& w : face_walk_refs_)
      if (w.size() > 1) out.push_back(w);
    return out;
  }

  /// Copy with a different outer face.
  PlaneGraph with_outer(FaceId f) const {
    if (f < 0 || static_cast<std::size_t>(f) >= faces_.size()) fail(ErrorKind::NoSuchFace, "face id out of range");
    PlaneGraph p(*this);
    p.outer_ = f;
    return p;
  }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    return a.graph_ == b.graph_ && a.rotation_ == b.rotation_ && a.face_walk_refs_ == b.face_walk_refs_ &&
           a.outer_ == b.outer_;
  }

 private:
  void build(const std::vector<std::vector<WalkRef>>& groups, const WalkRef* outer) {
    const int n = graph_.n();
    detail::DartIndex idx(rotation_);
    offset_ = idx.offset;

    // Walks: dart orbits first, then isolated vertices.
    std::vector<int> dart_walk(idx.size(), -1);
    std::vector<WalkRef> walk_ref;
    std::vector<int> walk_comp;
    auto comps = connected_components(graph_);
    std::vector<int> comp_of(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (Vertex v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (dart_walk[s] >= 0) continue;
      const int w = static_cast<int>(walk_ref.size());
      WalkRef best = WalkRef::dart(idx.tail[s], idx.head[s]);
      for (std::size_t d = s; dart_walk[d] < 0; d = idx.next_in_face(rotation_, d)) {
        dart_walk[d] = w;
        best = std::min(best, WalkRef::dart(idx.tail[d], idx.head[d]));
      }
      walk_ref.push_back(best);
      walk_comp.push_back(comp_of[static_cast<std::size_t>(idx.tail[s])]);
    }
    std::vector<int> isolated_walk(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
      if (graph_.degree(v) == 0) {
        isolated_walk[static_cast<std::size_t>(v)] = static_cast<int>(walk_ref.size());
        walk_ref.push_back(WalkRef::isolated(v));
        walk_comp.push_back(comp_of[static_cast<std::size_t>(v)]);
      }
    const std::size_t num_walks = walk_ref.size();

    // Euler per component: n_K - m_K + walks_K = 2.
    std::vector<long> euler(comps.size(), 0);
    for (Vertex v = 0; v < n; ++v) euler[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])] += 1;
    for (const Edge& e : graph_.edges()) euler[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(e.u)])] -= 1;
    for (std::size_t w = 0; w < num_walks; ++w) euler[static_cast<std::size_t>(walk_comp[w])] += 1;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (euler[c] != 2)
        fail(ErrorKind::NotPlanarRotation,
             "component containing vertex " + std::to_string(comps[c].front()) + " has positive genus");

    auto resolve = [&](const WalkRef& r) -> int {
      if (!graph_.valid(r.v)) fail(ErrorKind::NotPlanarRotation, "walk reference names a missing vertex");
      if (r.is_isolated()) {
        int w = isolated_walk[static_cast<std::size_t>(r.v)];
        if (w < 0) fail(ErrorKind::NotPlanarRotation, "vertex " + std::to_string(r.v) + " is not isolated");
        return w;
      }
      const auto& rv = rotation_[static_cast<std::size_t>(r.v)];
      auto it = std::find(rv.begin(), rv.end(), r.to);
      if (it == rv.end()) fail(ErrorKind::NotPlanarRotation, "walk reference names a missing dart");
      return dart_walk[offset_[static_cast<std::size_t>(r.v)] + static_cast<std::size_t>(it - rv.begin())];
    };

    // Group walks into faces.
    detail::UnionFind uf(num_walks);
    std::vector<char> grouped(num_walks, 0);
    for (const auto& grp : groups) {
      if (grp.empty()) continue;
      int first = resolve(grp.front());
      for (const WalkRef& r : grp) {
        int w = resolve(r);
        if (grouped[static_cast<std::size_t>(w)])
          fail(ErrorKind::NotPlanarRotation, "walk listed in two face groups");
        grouped[static_cast<std::size_t>(w)] = 1;
        uf.unite(static_cast<std::size_t>(first), static_cast<std::size_t>(w));
      }
    }

    // Faces numbered by smallest member reference.
    std::vector<int> best(num_walks, -1);
    for (std::size_t w = 0; w < num_walks; ++w) {
      int& b = best[uf.find(w)];
      if (b < 0 || walk_ref[w] < walk_ref[static_cast<std::size_t>(b)]) b = static_cast<int>(w);
    }
    std::vector<std::pair<WalkRef, std::size_t>> order;
    for (std::size_t r = 0; r < num_walks; ++r)
      if (best[r] >= 0) order.push_back({walk_ref[static_cast<std::size_t>(best[r])], r});
    std::sort(order.begin(), order.end());
    std::vector<FaceId> face_of_root(num_walks, -1);
    for (std::size_t i = 0; i < order.size(); ++i) face_of_root[order[i].second] = static_cast<FaceId>(i);
    const std::size_t f = order.size();

    // Sphere condition: the component/face incidence graph is a tree.
    if (n > 0) {
      if (f + comps.size() != num_walks + 1)
        fail(ErrorKind::NotPlanarRotation, "face grouping does not describe a sphere");
      detail::UnionFind tree(comps.size() + f);
      for (std::size_t w = 0; w < num_walks; ++w)
        if (!tree.unite(static_cast<std::size_t>(walk_comp[w]),
                        comps.size() + static_cast<std::size_t>(face_of_root[uf.find(w)])))
          fail(ErrorKind::NotPlanarRotation, "face grouping encloses a cycle");
    }

    faces_.assign(f, Face{});
    face_refs_.assign(f, WalkRef{});
    face_walk_refs_.assign(f, {});
    for (std::size_t i = 0; i < f; ++i) {
      faces_[i].id = static_cast<FaceId>(i);
      face_refs_[i] = order[i].first;
    }
    dart_face_.assign(idx.size(), -1);
    for (std::size_t d = 0; d < idx.size(); ++d)
      dart_face_[d] = face_of_root[uf.find(static_cast<std::size_t>(dart_walk[d]))];
    isolated_face_.assign(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
      int w = isolated_walk[static_cast<std::size_t>(v)];
      if (w < 0) continue;
      FaceId fid = face_of_root[uf.find(static_cast<std::size_t>(w))];
      isolated_face_[static_cast<std::size_t>(v)] = fid;
      faces_[static_cast<std::size_t>(fid)].isolated.push_back(v);
    }
    // Dart walks in order of their smallest dart, each starting there.
    std::vector<std::size_t> dart_walks;
    for (std::size_t w = 0; w < num_walks; ++w)
      if (!walk_ref[w].is_isolated()) dart_walks.push_back(w);
    std::sort(dart_walks.begin(), dart_walks.end(),
              [&](std::size_t a, std::size_t b) { return walk_ref[a] < walk_ref[b]; });
    for (std::size_t w : dart_walks) {
      const WalkRef& r = walk_ref[w];
      const auto& rv = rotation_[static_cast<std::size_t>(r.v)];
      const std::size_t s0 = offset_[static_cast<std::size_t>(r.v)] +
                             static_cast<std::size_t>(std::find(rv.begin(), rv.end(), r.to) - rv.begin());
      std::vector<Dart> walk;
      std::size_t d = s0;
      do {
        walk.push_back({idx.tail[d], idx.head[d]});
        d = idx.next_in_face(rotation_, d);
      } while (d != s0);
      faces_[static_cast<std::size_t>(dart_face_[s0])].walks.push_back(std::move(walk));
    }
    for (std::size_t w = 0; w < num_walks; ++w)
      face_walk_refs_[static_cast<std::size_t>(face_of_root[uf.find(w)])].push_back(walk_ref[w]);
    for (auto& refs : face_walk_refs_) std::sort(refs.begin(), refs.end());

    outer_ = -1;
    if (outer && n > 0) outer_ = face_of_root[uf.find(static_cast<std::size_t>(resolve(*outer)))];
  }

  Graph graph_;
  Rotation rotation_;
  std::vector<std::size_t> offset_;
  std::vector<FaceId> dart_face_;
  std::vector<FaceId> isolated_face_;
  std::vector<Face> faces_;
  std::vector<WalkRef> face_refs_;
  std::vector<std::vector<WalkRef>> face_walk_refs_;
  FaceId outer_ = -1;
};

/// Faces of p (the tracing already happened at construction; the Euler and
/// sphere checks raise NotPlanarRotation there).
inline const std::vector<Face>& trace_faces(const PlaneGraph& p) { return p.faces(); }

/// Checks a bare rotation system of a connected or disconnected graph for
/// genus 0 per component.
inline bool rotation_is_planar(const Graph& g, const Rotation& rot) {
  try {
    detail::check_rotation(g, rot);
    auto walks = trace_walks(rot);
    auto comps = connected_components(g);
    std::vector<int> comp_of(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (Vertex v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    std::vector<long> euler(comps.size(), 0);
    for (Vertex v = 0; v < g.n(); ++v) {
      euler[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])] += g.degree(v) == 0 ? 2 : 1;
    }
    for (const Edge& e : g.edges()) euler[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(e.u)])] -= 1;
    for (const auto& w : walks) euler[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(w.front().from)])] += 1;
    for (long e : euler)
      if (e != 2) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Result of restricting a drawing: the smaller drawing, and for every face
/// of the original the face of the restriction containing it.
struct Restriction {
  PlaneGraph plane;
  std::vector<FaceId> face_map;
  std::vector<Vertex> to_parent;  // identity unless vertices were removed
  std::vector<Vertex> to_child;
};

/// Drops the edges for which `drop(e)` holds. Faces on both sides of a
/// dropped edge merge; walks and isolated vertices are grouped by the merged
/// faces they came from.
template <class DropPred>
Restriction restrict_edges(const PlaneGraph& p, DropPred drop) {
  const int n = p.n();
  Graph g(n);
  Rotation rot(static_cast<std::size_t>(n));
  detail::UnionFind uf(p.num_faces());
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : p.rotation(v)) {
      if (drop(Edge(v, w))) {
        if (v < w) uf.unite(static_cast<std::size_t>(p.face_of({v, w})), static_cast<std::size_t>(p.face_of({w, v})));
      } else {
        rot[static_cast<std::size_t>(v)].push_back(w);
        if (v < w) g.add_edge(v, w);
      }
    }

  auto old_face_near = [&](Vertex v) -> FaceId {
    if (p.rotation(v).empty()) return p.face_of_isolated(v);
    return p.face_of({v, p.rotation(v).front()});
  };

  std::vector<std::vector<WalkRef>> by_class(p.num_faces());
  for (const auto& walk : trace_walks(rot)) {
    std::size_t cls = uf.find(static_cast<std::size_t>(p.face_of(walk.front())));
    by_class[cls].push_back(WalkRef::dart(walk.front().from, walk.front().to));
  }
  for (Vertex v = 0; v < n; ++v)
    if (rot[static_cast<std::size_t>(v)].empty())
      by_class[uf.find(static_cast<std::size_t>(old_face_near(v)))].push_back(WalkRef::isolated(v));

  std::vector<std::vector<WalkRef>> groups;
  for (const auto& c : by_class)
    if (c.size() > 1) groups.push_back(c);
  WalkRef outer{};
  bool have_outer = false;
  if (n > 0 && p.outer() >= 0) {
    const auto& c = by_class[uf.find(static_cast<std::size_t>(p.outer()))];
    ensure(!c.empty(), "outer face vanished under edge deletion");
    outer = c.front();
    have_outer = true;
  }

  Restriction out;
  out.plane = PlaneGraph(std::move(g), std::move(rot), groups, have_outer ? outer : WalkRef::isolated(0));
  out.face_map.assign(p.num_faces(), -1);
  for (std::size_t f = 0; f < p.num_faces(); ++f) {
    const auto& c = by_class[uf.find(f)];
    ensure(!c.empty(), "face class without surviving walk");
    const WalkRef& r = c.front();
    out.face_map[f] = r.is_isolated() ? out.plane.face_of_isolated(r.v) : out.plane.face_of({r.v, r.to});
  }
  out.to_parent.resize(static_cast<std::size_t>(n));
  std::iota(out.to_parent.begin(), out.to_parent.end(), 0);
  out.to_child = out.to_parent;
  return out;
}

/// Rotations with the dropped neighbors excised; outer face re-identified.
inline PlaneGraph delete_edges_plane(const PlaneGraph& p, const EdgeList& drop) {
  EdgeList d = normalized(drop);
  for (const Edge& e : d)
    if (!p.graph().has_edge(e.u, e.v))
      fail(ErrorKind::BadVertex, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in drawing");
  return restrict_edges(p, [&](const Edge& e) { return std::binary_search(d.begin(), d.end(), e); }).plane;
}

/// For every face of `big`, the face of `big` minus `added` that contains it.
inline std::vector<FaceId> face_provenance(const PlaneGraph& big, const EdgeList& added) {
  EdgeList d = normalized(added);
  return restrict_edges(big, [&](const Edge& e) { return std::binary_search(d.begin(), d.end(), e); }).face_map;
}

/// Drawing induced on `keep` (vertex deletion), relabeled to 0..|keep|-1.
inline Restriction restrict_vertices(const PlaneGraph& p, const VertexSet& keep_in) {
  VertexSet keep = make_vertex_set(keep_in);
  std::vector<Vertex> to_child(static_cast<std::size_t>(p.n()), -1);
  std::vector<Vertex> to_parent;
  for (Vertex v : keep) {
    if (!p.graph().valid(v)) fail(ErrorKind::BadVertex, "vertex " + std::to_string(v) + " out of range");
    to_child[static_cast<std::size_t>(v)] = static_cast<Vertex>(to_parent.size());
    to_parent.push_back(v);
  }
  auto inside = [&](Vertex v) { return to_child[static_cast<std::size_t>(v)] >= 0; };
  Restriction mid = restrict_edges(p, [&](const Edge& e) { return !inside(e.u) || !inside(e.v); });
  const PlaneGraph& q = mid.plane;

  const int k = static_cast<int>(to_parent.size());
  Graph g(k);
  Rotation rot(static_cast<std::size_t>(k));
  for (Vertex c = 0; c < k; ++c) {
    Vertex v = to_parent[static_cast<std::size_t>(c)];
    for (Vertex w : q.rotation(v)) {
      rot[static_cast<std::size_t>(c)].push_back(to_child[static_cast<std::size_t>(w)]);
      if (v < w) g.add_edge(c, to_child[static_cast<std::size_t>(w)]);
    }
  }
  auto map_ref = [&](const WalkRef& r) {
    return r.is_isolated() ? WalkRef::isolated(to_child[static_cast<std::size_t>(r.v)])
                           : WalkRef::dart(to_child[static_cast<std::size_t>(r.v)], to_child[static_cast<std::size_t>(r.to)]);
  };
  auto keep_ref = [&](const WalkRef& r) { return inside(r.v); };

  // Surviving references per face of q.
  std::vector<std::vector<WalkRef>> per_face(q.num_faces());
  for (const Face& f : q.faces()) {
    for (const auto& w : f.walks)
      if (inside(w.front().from)) per_face[static_cast<std::size_t>(f.id)].push_back(map_ref(WalkRef::dart(w.front().from, w.front().to)));
    for (Vertex v : f.isolated)
      if (inside(v)) per_face[static_cast<std::size_t>(f.id)].push_back(map_ref(WalkRef::isolated(v)));
  }
  std::vector<std::vector<WalkRef>> groups;
  for (const auto& refs : per_face)
    if (refs.size() > 1) groups.push_back(refs);
  WalkRef outer = WalkRef::isolated(0);
  if (k > 0) {
    ensure(q.outer() >= 0 && !per_face[static_cast<std::size_t>(q.outer())].empty(),
           "outer face has no surviving walk");
    outer = per_face[static_cast<std::size_t>(q.outer())].front();
  }
  (void)keep_ref;

  Restriction out;
  out.plane = PlaneGraph(std::move(g), std::move(rot), groups, outer);
  out.face_map.assign(p.num_faces(), -1);
  for (std::size_t f = 0; f < p.num_faces(); ++f) {
    const auto& refs = per_face[static_cast<std::size_t>(mid.face_map[f])];
    if (refs.empty()) continue;
    const WalkRef& r = refs.front();
    out.face_map[f] = r.is_isolated() ? out.plane.face_of_isolated(r.v) : out.plane.face_of({r.v, r.to});
  }
  out.to_parent = std::move(to_parent);
  out.to_child = std::move(to_child);
  return out;
}

/// True iff deleting `added` from `big` reproduces `small` exactly: same
/// rotations up to cyclic shift, same face grouping, same outer face.
inline bool extends(const PlaneGraph& big, const PlaneGraph& small, const EdgeList& added) {
  if (big.n() != small.n()) fail(ErrorKind::VertexMismatch, "drawings have different vertex counts");
  EdgeList a = normalized(added);
  Graph expect = small.graph();
  for (const Edge& e : a)
    if (!expect.add_edge(e.u, e.v)) return false;
  if (!(expect == big.graph())) return false;
  return delete_edges_plane(big, a) == small;
}

/// Some face of p incident to v.
inline FaceId face_near(const PlaneGraph& p, Vertex v) {
  const auto& r = p.rotation(v);
  return r.empty() ? p.face_of_isolated(v) : p.face_of({v, r.front()});
}

/// The face of `sub` (a restriction of p) containing every vertex of `c`,
/// none of which may be kept by the restriction.
inline FaceId locate_in_restriction(const PlaneGraph& p, const Restriction& sub, const VertexSet& c) {
  if (c.empty()) fail(ErrorKind::SplitAcrossFaces, "empty vertex set has no face");
  FaceId out = -1;
  for (Vertex v : c) {
    if (sub.to_child[static_cast<std::size_t>(v)] >= 0) fail(ErrorKind::SplitAcrossFaces, "sets overlap");
    FaceId f = sub.face_map[static_cast<std::size_t>(face_near(p, v))];
    ensure(f >= 0, "located face vanished");
    if (out >= 0 && f != out) fail(ErrorKind::SplitAcrossFaces, "vertices do not share one face of the restriction");
    out = f;
  }
  return out;
}

/// The face of the drawing restricted to `h` that contains every vertex of
/// `c`. The returned id refers to `restrict_vertices(p, h).plane`.
inline FaceId locate_component_face(const PlaneGraph& p, const VertexSet& h, const VertexSet& c) {
  return locate_in_restriction(p, restrict_vertices(p, h), make_vertex_set(c));
}

}  // namespace p3t
