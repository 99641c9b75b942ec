#pragma once

// Augments a plane partial 3-tree (n >= 3) to a plane 3-tree on the same
// vertex set whose drawing restricts to the input drawing.
//
// The recursion follows the connectivity of the input:
//   n <= 4        pick a triangle / K4 drawing extending the input
//   disconnected  complete an innermost component and the rest, put the
//                 first inside a triangle of the second, add six connectors
//   cut vertex a  complete both sides, glue at a, add three connectors
//   2-cut {a,b}   insert ab if missing, complete both sides, glue along ab,
//                 add one connector
//   3-connected   take the last vertex u of a 3-tree supergraph's PES; its
//                 three neighbors become a triangle in the angles of u,
//                 recurse without u, put u back into that triangle
// Every glue concatenates PESs so the result stays a 3-tree.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/ktree.hpp"
#include "p3t/plane.hpp"
#include "p3t/tw3.hpp"

namespace p3t {

/// Vertex or edge that must lie on the outer triangle of a completion.
struct Anchor {
  Vertex u = 0;
  Vertex v = -1;

  static Anchor vertex(Vertex a) { return {a, -1}; }
  static Anchor edge(Vertex a, Vertex b) { return {a, b}; }
  bool is_edge() const { return v >= 0; }
};

/// How often each case handler ran during one completion (recursion included).
struct CaseCounters {
  std::size_t base = 0;
  std::size_t disconnected = 0;
  std::size_t articulation = 0;
  std::size_t two_cut_with_edge = 0;
  std::size_t two_cut_without_edge = 0;
  std::size_t triconnected = 0;

  CaseCounters& operator+=(const CaseCounters& o) {
    base += o.base;
    disconnected += o.disconnected;
    articulation += o.articulation;
    two_cut_with_edge += o.two_cut_with_edge;
    two_cut_without_edge += o.two_cut_without_edge;
    triconnected += o.triconnected;
    return *this;
  }
};

struct Completion {
  PlaneGraph input;
  PlaneGraph output;
  EdgeList added;
  Pes pes;
  std::vector<FaceId> provenance;  // output face -> input face it refines
  CaseCounters counters;
};

namespace detail {

// A triangulation under construction, in the labels of its subproblem.
struct Solved {
  Graph graph;
  Rotation rot;
  std::vector<Vertex> pes;
  CaseCounters counters;
};

inline std::size_t position_of(const std::vector<Vertex>& r, Vertex w) {
  auto it = std::find(r.begin(), r.end(), w);
  ensure(it != r.end(), "neighbor missing from rotation");
  return static_cast<std::size_t>(it - r.begin());
}

inline Vertex ccw_next(const Rotation& rot, Vertex v, Vertex w) {
  const auto& r = rot[static_cast<std::size_t>(v)];
  return r[(position_of(r, w) + 1) % r.size()];
}

inline Vertex ccw_prev(const Rotation& rot, Vertex v, Vertex w) {
  const auto& r = rot[static_cast<std::size_t>(v)];
  return r[(position_of(r, w) + r.size() - 1) % r.size()];
}

/// Vertex sequence of the face walk through dart d, starting at d.from.
inline std::vector<Vertex> face_walk(const Rotation& rot, Dart d) {
  std::vector<Vertex> walk;
  Dart cur = d;
  do {
    walk.push_back(cur.from);
    ensure(walk.size() <= 4 * rot.size() * rot.size() + 8, "face walk does not close");
    cur = Dart{cur.to, ccw_prev(rot, cur.to, cur.from)};
  } while (!(cur == d));
  return walk;
}

inline void insert_after(Rotation& rot, Vertex at, Vertex after, Vertex what) {
  auto& r = rot[static_cast<std::size_t>(at)];
  r.insert(r.begin() + static_cast<std::ptrdiff_t>(position_of(r, after) + 1), what);
}

/// Adds chords inside the face whose walk is `walk` (as returned by
/// face_walk). Chords are pairs of walk positions and must not cross.
inline void add_chords(Graph& g, Rotation& rot, const std::vector<Vertex>& walk,
                       const std::vector<std::pair<std::size_t, std::size_t>>& chords) {
  const std::size_t len = walk.size();
  std::vector<std::vector<std::size_t>> at(len);
  for (auto [i, j] : chords) {
    at[i].push_back(j);
    at[j].push_back(i);
  }
  for (std::size_t i = 0; i < len; ++i) {
    auto& targets = at[i];
    std::sort(targets.begin(), targets.end(),
              [&](std::size_t x, std::size_t y) { return (x + len - i) % len < (y + len - i) % len; });
    Vertex after = walk[(i + 1) % len];
    for (std::size_t j : targets) {
      insert_after(rot, walk[i], after, walk[j]);
      after = walk[j];
    }
  }
  for (auto [i, j] : chords) ensure(g.add_edge(walk[i], walk[j]), "chord duplicates an edge");
}

/// Puts new vertex u into the triangular face with walk tri.
inline void stack_vertex(Graph& g, Rotation& rot, const std::vector<Vertex>& tri, Vertex u) {
  ensure(tri.size() == 3, "stacking needs a triangular face");
  ensure(rot[static_cast<std::size_t>(u)].empty(), "stacked vertex already placed");
  for (std::size_t i = 0; i < 3; ++i) {
    insert_after(rot, tri[i], tri[(i + 1) % 3], u);
    g.add_edge(tri[i], u);
  }
  rot[static_cast<std::size_t>(u)] = tri;
}

/// Re-expresses a child solution in parent labels (other vertices empty).
inline Solved lift(const Solved& s, const std::vector<Vertex>& to_parent, int n) {
  Solved out;
  out.graph = Graph(n);
  out.rot.assign(static_cast<std::size_t>(n), {});
  for (const Edge& e : s.graph.edges())
    out.graph.add_edge(to_parent[static_cast<std::size_t>(e.u)], to_parent[static_cast<std::size_t>(e.v)]);
  for (std::size_t v = 0; v < s.rot.size(); ++v)
    for (Vertex w : s.rot[v]) out.rot[static_cast<std::size_t>(to_parent[v])].push_back(to_parent[static_cast<std::size_t>(w)]);
  for (Vertex v : s.pes) out.pes.push_back(to_parent[static_cast<std::size_t>(v)]);
  out.counters = s.counters;
  return out;
}

/// Union of two lifted solutions; rotations of shared vertices are left to the caller.
inline Solved merge_parts(const Solved& a, const Solved& b, int n) {
  Solved out;
  out.graph = a.graph;
  for (const Edge& e : b.graph.edges()) out.graph.add_edge(e.u, e.v);
  out.rot.assign(static_cast<std::size_t>(n), {});
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
    out.rot[v] = a.rot[v].empty() ? b.rot[v] : a.rot[v];
  out.counters = a.counters;
  out.counters += b.counters;
  return out;
}

/// Growth order of a child solution re-rooted at `base` (child labels),
/// mapped to parent labels, with the base vertices in `skip` dropped.
inline std::vector<Vertex> rerooted_tail(const Solved& child, const std::vector<Vertex>& base,
                                         const std::vector<Vertex>& to_parent, const std::vector<Vertex>& skip) {
  Pes p = reroot_pes(child.graph, base);
  std::vector<Vertex> out;
  for (Vertex v : p.order) {
    Vertex pv = to_parent[static_cast<std::size_t>(v)];
    if (std::find(skip.begin(), skip.end(), pv) == skip.end()) out.push_back(pv);
  }
  return out;
}

inline void check_glue(const Solved& s, const char* where) {
  ensure(s.graph.num_edges() == static_cast<std::size_t>(3 * s.graph.n() - 6), where);
  ensure(verify_pes(s.graph, Pes{s.pes, 3}, true), where);
  ensure(rotation_is_planar(s.graph, s.rot), where);
}

/// All triangulations of a convex polygon with `len` corners, as diagonal lists.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> polygon_triangulations(std::size_t len) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  // rec(i, j): triangulations of the sub-polygon i..j closed by side (i, j).
  std::function<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>(std::size_t, std::size_t)> rec =
      [&](std::size_t i, std::size_t j) {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> res;
        if (j - i < 2) {
          res.push_back({});
          return res;
        }
        for (std::size_t k = i + 1; k < j; ++k)
          for (const auto& left : rec(i, k))
            for (const auto& right : rec(k, j)) {
              auto t = left;
              t.insert(t.end(), right.begin(), right.end());
              if (k - i >= 2) t.emplace_back(i, k);
              if (j - k >= 2) t.emplace_back(k, j);
              res.push_back(std::move(t));
            }
        return res;
      };
  return rec(0, len - 1);
}

}  // namespace detail

struct CompleteOptions {
  bool paranoid = false;  // check every intermediate result against its input
};

/// A component C of G - sep whose drawing can be completed on its own.
struct InnerPart {
  VertexSet sep;
  VertexSet component;
  Restriction g1;        // drawing of C + sep
  Restriction g2;        // drawing of V - C
  FaceId toward_rest;    // face of g1.plane holding V - C - sep
  FaceId f;              // face of g2.plane holding C
};

namespace detail {

inline VertexSet complement(int n, const VertexSet& s) {
  VertexSet out;
  for (Vertex v = 0; v < n; ++v)
    if (!contains(s, v)) out.push_back(v);
  return out;
}

// Everything but g2 and f, which only the chosen part needs.
inline std::optional<InnerPart> try_inner_part(const PlaneGraph& p, const VertexSet& sep, const VertexSet& comp,
                                               bool need_sep_edge) {
  const int n = p.n();
  VertexSet side1 = comp;
  side1.insert(side1.end(), sep.begin(), sep.end());
  side1 = make_vertex_set(side1);
  VertexSet rest = complement(n, side1);
  if (rest.empty()) return std::nullopt;

  if (sep.size() == 1) {
    // C's neighbors around the cut vertex must be consecutive.
    const auto& r = p.rotation(sep[0]);
    std::size_t starts = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (contains(comp, r[i]) && !contains(comp, r[(i + r.size() - 1) % r.size()])) ++starts;
    if (starts != 1) return std::nullopt;
  }

  InnerPart out;
  out.g1 = restrict_vertices(p, side1);
  try {
    out.toward_rest = locate_in_restriction(p, out.g1, rest);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SplitAcrossFaces) return std::nullopt;
    throw;
  }
  out.sep = sep;
  out.component = comp;

  if (need_sep_edge) {
    const auto& tc = out.g1.to_child;
    Vertex a = tc[static_cast<std::size_t>(sep[0])], b = tc[static_cast<std::size_t>(sep[1])];
    if (!out.g1.plane.graph().has_edge(a, b)) return std::nullopt;
    if (out.g1.plane.face_of({a, b}) != out.toward_rest && out.g1.plane.face_of({b, a}) != out.toward_rest)
      return std::nullopt;
  }
  return out;
}

// Prefers a component with everything else in its outer face; on the
// sphere any component with everything else in one face would do.
inline std::optional<InnerPart> find_inner_part(const PlaneGraph& p, const VertexSet& sep, bool need_sep_edge) {
  std::optional<InnerPart> pick;
  for (const VertexSet& comp : components_without(p.graph(), sep)) {
    auto part = try_inner_part(p, sep, comp, need_sep_edge);
    if (!part) continue;
    bool outer = part->toward_rest == part->g1.plane.outer();
    if (!pick || outer) pick = std::move(part);
    if (outer) break;
  }
  if (pick) {
    pick->g2 = restrict_vertices(p, complement(p.n(), pick->component));
    pick->f = locate_in_restriction(p, pick->g2, pick->component);
  }
  return pick;
}

}  // namespace detail

/// Picks the component of G - sep with the smallest vertex whose far side
/// lies in a single face of the drawing of C + sep.
inline InnerPart select_inner_part(const PlaneGraph& p, const VertexSet& sep_in) {
  VertexSet sep = make_vertex_set(sep_in);
  for (Vertex v : sep)
    if (!p.graph().valid(v)) fail(ErrorKind::BadVertex, "separator vertex out of range");
  if (components_without(p.graph(), sep).size() < 2) fail(ErrorKind::NotSeparating, "set does not separate the graph");
  bool need_edge = sep.size() == 2 && p.graph().has_edge(sep[0], sep[1]);
  auto part = detail::find_inner_part(p, sep, need_edge);
  if (!part) fail(ErrorKind::SplitAcrossFaces, "no component has its complement inside one face");
  return *part;
}

namespace detail {

inline Solved solve(const PlaneGraph& p, const CompleteOptions& opt);

inline EdgeList edges_beyond(const Graph& big, const Graph& small) {
  EdgeList out;
  for (const Edge& e : big.edges())
    if (!small.has_edge(e.u, e.v)) out.push_back(e);
  return out;
}

inline PlaneGraph as_plane(const Solved& s) {
  Vertex v0 = 0;
  return PlaneGraph::connected(s.graph, s.rot, Dart{v0, s.rot[0].front()});
}

/// Same drawing as p after removing the added edges, outer face aside.
inline bool restricts_to(const Solved& s, const PlaneGraph& p) {
  PlaneGraph big = as_plane(s);
  PlaneGraph back = delete_edges_plane(big, edges_beyond(s.graph, p.graph()));
  return back.graph() == p.graph() && back.with_outer(p.outer()) == p;
}

inline Solved finish(Solved s, const PlaneGraph& p, const CompleteOptions& opt, const char* where) {
  check_glue(s, where);
  if (opt.paranoid) ensure(restricts_to(s, p), where);
  return s;
}

// The two planar rotation systems of K4 (mirror images).
inline const std::vector<Rotation>& k4_rotations() {
  static const std::vector<Rotation> rots = [] {
    std::vector<Rotation> out;
    Graph k(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (int mask = 0; mask < 16; ++mask) {
      Rotation rot(4);
      for (Vertex v = 0; v < 4; ++v) {
        for (Vertex w = 0; w < 4; ++w)
          if (w != v) rot[static_cast<std::size_t>(v)].push_back(w);
        if (mask >> v & 1) std::swap(rot[static_cast<std::size_t>(v)][1], rot[static_cast<std::size_t>(v)][2]);
      }
      if (rotation_is_planar(k, rot)) out.push_back(rot);
    }
    return out;
  }();
  return rots;
}

// Whether dropping the extra neighbors from `big` leaves p's rotations.
inline bool rotations_restrict(const Rotation& big, const PlaneGraph& p) {
  for (Vertex v = 0; v < p.n(); ++v) {
    const auto& want = p.rotation(v);
    if (want.size() < 3) continue;
    std::vector<Vertex> got;
    for (Vertex w : big[static_cast<std::size_t>(v)])
      if (p.graph().has_edge(v, w)) got.push_back(w);
    auto at = std::find(got.begin(), got.end(), want.front());
    std::rotate(got.begin(), at, got.end());
    if (got != want) return false;
  }
  return true;
}

inline Solved solve_base(const PlaneGraph& p) {
  const int n = p.n();
  ensure(n == 3 || n == 4, "base case needs 3 or 4 vertices");
  Graph k(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) k.add_edge(a, b);
  Solved s{k, {}, {}, {}};
  for (Vertex v = 0; v < n; ++v) s.pes.push_back(v);
  s.counters.base = 1;
  if (n == 3) {
    s.rot = {{1, 2}, {2, 0}, {0, 1}};
    return s;
  }
  EdgeList added = edges_beyond(k, p.graph());
  for (const Rotation& rot : k4_rotations()) {
    if (!rotations_restrict(rot, p)) continue;
    PlaneGraph cand = PlaneGraph::connected(k, rot, Dart{0, 1});
    for (FaceId f = 0; f < static_cast<FaceId>(cand.num_faces()); ++f)
      if (extends(cand.with_outer(f), p, added)) {
        s.rot = rot;
        return s;
      }
  }
  fail(ErrorKind::Internal, "no small triangulation extends the drawing");
}

// Triangle of a completed side refining face `face` of that side's drawing.
inline std::vector<Vertex> host_triangle(const Restriction& r, FaceId face, const Solved& lifted) {
  WalkRef ref = r.plane.face_ref(face);
  Vertex a = r.to_parent[static_cast<std::size_t>(ref.v)];
  Vertex b = ref.is_isolated() ? lifted.rot[static_cast<std::size_t>(a)].front() : r.to_parent[static_cast<std::size_t>(ref.to)];
  auto tri = face_walk(lifted.rot, Dart{a, b});
  ensure(tri.size() == 3, "completed side has a non-triangular face");
  return tri;
}

inline std::vector<Vertex> child_labels(const Restriction& r, const std::vector<Vertex>& vs) {
  std::vector<Vertex> out;
  for (Vertex v : vs) out.push_back(r.to_child[static_cast<std::size_t>(v)]);
  return out;
}

inline Solved solve_disconnected(const PlaneGraph& p, const CompleteOptions& opt) {
  const int n = p.n();
  auto part = find_inner_part(p, {}, false);
  ensure(part.has_value(), "no innermost component");
  const VertexSet& inner = part->component;
  VertexSet outer = complement(n, inner);

  Solved s;
  if (inner.size() >= 3 && outer.size() >= 3) {
    Solved c1 = solve(part->g1.plane, opt), c2 = solve(part->g2.plane, opt);
    Solved s1 = lift(c1, part->g1.to_parent, n), s2 = lift(c2, part->g2.to_parent, n);
    auto t = host_triangle(part->g1, part->toward_rest, s1);
    auto big = host_triangle(part->g2, part->f, s2);
    s = merge_parts(s1, s2, n);
    Vertex x = big[0], a = t[0];
    insert_after(s.rot, x, big[1], a);
    insert_after(s.rot, a, t[1], x);
    s.graph.add_edge(x, a);
    auto oct = face_walk(s.rot, Dart{x, a});
    ensure(oct.size() == 8, "joined faces do not form an octagon");

    // Six connectors: one outer vertex sees all of t, one inner vertex sees
    // all of big, plus one more edge. Outer vertices ordered by connector
    // degree give the growth order X, Y, Z after the inner side.
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> pick;
    std::vector<Vertex> base;
    for (const auto& tri : polygon_triangulations(8)) {
      bool ok = true;
      EdgeList conn{Edge(x, a)};
      for (auto [i, j] : tri) {
        if (oct[i] == oct[j] || s.graph.has_edge(oct[i], oct[j])) ok = false;
        conn.emplace_back(oct[i], oct[j]);
      }
      if (!ok || normalized(conn).size() != conn.size()) continue;
      auto degree_of = [&](Vertex v) {
        return std::count_if(conn.begin(), conn.end(), [&](const Edge& e) { return e.u == v || e.v == v; });
      };
      std::vector<std::pair<long, Vertex>> outer_deg, inner_deg;
      for (Vertex v : big) outer_deg.emplace_back(degree_of(v), v);
      for (Vertex v : t) inner_deg.emplace_back(degree_of(v), v);
      std::sort(outer_deg.rbegin(), outer_deg.rend());
      std::sort(inner_deg.rbegin(), inner_deg.rend());
      auto shape = [](const std::vector<std::pair<long, Vertex>>& d) {
        return d[0].first == 3 && d[1].first == 2 && d[2].first == 1;
      };
      if (!shape(outer_deg) || !shape(inner_deg)) continue;
      pick = tri;
      base = {outer_deg[0].second, outer_deg[1].second, outer_deg[2].second};
      break;
    }
    ensure(pick.has_value(), "no connector pattern fits the octagon");
    add_chords(s.graph, s.rot, oct, *pick);
    s.pes = s1.pes;
    auto tail = rerooted_tail(c2, child_labels(part->g2, base), part->g2.to_parent, {});
    s.pes.insert(s.pes.end(), tail.begin(), tail.end());
  } else {
    // One side has at most two vertices: stack them into the other side.
    bool inner_small = inner.size() < 3;
    const Restriction& host_r = inner_small ? part->g2 : part->g1;
    FaceId host_f = inner_small ? part->f : part->toward_rest;
    const VertexSet& small = inner_small ? inner : outer;
    Solved c = solve(host_r.plane, opt);
    s = lift(c, host_r.to_parent, n);
    auto tri = host_triangle(host_r, host_f, s);
    stack_vertex(s.graph, s.rot, tri, small[0]);
    if (small.size() == 2) stack_vertex(s.graph, s.rot, {small[0], tri[0], tri[1]}, small[1]);
    s.pes.insert(s.pes.end(), small.begin(), small.end());
  }
  s.counters.disconnected += 1;
  return finish(std::move(s), p, opt, "disconnected glue");
}

inline std::optional<Solved> solve_articulation(const PlaneGraph& p, Vertex a, const CompleteOptions& opt) {
  const int n = p.n();
  auto part = find_inner_part(p, {a}, false);
  if (!part) return std::nullopt;
  const VertexSet& comp = part->component;

  // C's block in the rotation at a runs c_1..c_k, preceded by `before`.
  const auto& ra = p.rotation(a);
  const std::size_t deg = ra.size();
  std::size_t first = 0;
  while (!(contains(comp, ra[first]) && !contains(comp, ra[(first + deg - 1) % deg]))) ++first;
  Vertex before = ra[(first + deg - 1) % deg];
  std::size_t last = first;
  while (contains(comp, ra[(last + 1) % deg])) last = (last + 1) % deg;
  Vertex ck = ra[last];

  const std::size_t n1 = comp.size() + 1, n2 = static_cast<std::size_t>(n) - comp.size();
  Solved s;
  if (n1 >= 3 && n2 >= 3) {
    Solved c1 = solve(part->g1.plane, opt), c2 = solve(part->g2.plane, opt);
    Solved s1 = lift(c1, part->g1.to_parent, n), s2 = lift(c2, part->g2.to_parent, n);
    Vertex t = ccw_next(s1.rot, a, ck);
    Vertex u = before;
    Vertex w = ccw_next(s2.rot, a, u);
    s = merge_parts(s1, s2, n);
    const auto& r1 = s1.rot[static_cast<std::size_t>(a)];
    std::vector<Vertex> seq;
    for (std::size_t i = 0, at = position_of(r1, t); i < r1.size(); ++i) seq.push_back(r1[(at + i) % r1.size()]);
    auto merged = s2.rot[static_cast<std::size_t>(a)];
    merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(position_of(merged, u) + 1), seq.begin(), seq.end());
    s.rot[static_cast<std::size_t>(a)] = merged;
    auto hex = face_walk(s.rot, Dart{a, ck});
    ensure(hex == std::vector<Vertex>{a, ck, t, a, u, w}, "glued corners do not form a hexagon");
    add_chords(s.graph, s.rot, hex, {{1, 5}, {2, 5}, {2, 4}});
    s.pes = s1.pes;
    auto tail = rerooted_tail(c2, child_labels(part->g2, {a, w, u}), part->g2.to_parent, {a});
    s.pes.insert(s.pes.end(), tail.begin(), tail.end());
  } else if (n1 == 2) {
    Solved c2 = solve(part->g2.plane, opt);
    s = lift(c2, part->g2.to_parent, n);
    stack_vertex(s.graph, s.rot, face_walk(s.rot, Dart{a, before}), comp[0]);
    s.pes.push_back(comp[0]);
  } else {
    Vertex d = -1;
    for (Vertex v = 0; v < n; ++v)
      if (v != a && !contains(comp, v)) d = v;
    Solved c1 = solve(part->g1.plane, opt);
    s = lift(c1, part->g1.to_parent, n);
    stack_vertex(s.graph, s.rot, face_walk(s.rot, Dart{a, ck}), d);
    s.pes.push_back(d);
  }
  s.counters.articulation += 1;
  return finish(std::move(s), p, opt, "articulation glue");
}

// Glue along the separating edge uv (present in p).
inline std::optional<Solved> solve_two_cut_edge(const PlaneGraph& p, Vertex a, Vertex b, const CompleteOptions& opt) {
  const int n = p.n();
  auto part = find_inner_part(p, make_vertex_set({a, b}), true);
  if (!part) return std::nullopt;
  const auto& tc1 = part->g1.to_child;
  Vertex v = a, u = b;
  if (part->g1.plane.face_of({tc1[static_cast<std::size_t>(v)], tc1[static_cast<std::size_t>(u)]}) != part->toward_rest)
    std::swap(u, v);
  const auto& tc2 = part->g2.to_child;
  ensure(part->g2.plane.face_of({tc2[static_cast<std::size_t>(u)], tc2[static_cast<std::size_t>(v)]}) == part->f,
         "separating edge does not border the hosting face");

  Solved c1 = solve(part->g1.plane, opt), c2 = solve(part->g2.plane, opt);
  Solved s1 = lift(c1, part->g1.to_parent, n), s2 = lift(c2, part->g2.to_parent, n);
  auto tri1 = face_walk(s1.rot, Dart{v, u});
  auto tri2 = face_walk(s2.rot, Dart{u, v});
  ensure(tri1.size() == 3 && tri2.size() == 3, "completed sides are not triangulated");
  Vertex c = tri1[2], x = tri2[2];

  Solved s = merge_parts(s1, s2, n);
  auto rotated_from = [](const std::vector<Vertex>& r, Vertex start) {
    std::vector<Vertex> out;
    for (std::size_t i = 1, at = position_of(r, start); i < r.size(); ++i) out.push_back(r[(at + i) % r.size()]);
    return out;
  };
  auto ru = s2.rot[static_cast<std::size_t>(u)];
  auto seq_u = rotated_from(s1.rot[static_cast<std::size_t>(u)], v);
  ru.insert(ru.begin() + static_cast<std::ptrdiff_t>(position_of(ru, v) + 1), seq_u.begin(), seq_u.end());
  auto rv = s2.rot[static_cast<std::size_t>(v)];
  auto seq_v = rotated_from(s1.rot[static_cast<std::size_t>(v)], u);
  rv.insert(rv.begin() + static_cast<std::ptrdiff_t>(position_of(rv, u)), seq_v.begin(), seq_v.end());
  s.rot[static_cast<std::size_t>(u)] = ru;
  s.rot[static_cast<std::size_t>(v)] = rv;

  auto quad = face_walk(s.rot, Dart{u, c});
  ensure(quad == std::vector<Vertex>{u, c, v, x}, "glued faces do not form a quadrilateral");
  add_chords(s.graph, s.rot, quad, {{1, 3}});
  s.pes = s1.pes;
  auto tail = rerooted_tail(c2, child_labels(part->g2, {u, v, x}), part->g2.to_parent, {u, v});
  s.pes.insert(s.pes.end(), tail.begin(), tail.end());
  s.counters.two_cut_with_edge += 1;
  return finish(std::move(s), p, opt, "2-cut glue");
}

// Draws the missing edge ab through a face that C and the rest share.
inline std::optional<PlaneGraph> insert_separating_edge(const PlaneGraph& p, Vertex a, Vertex b) {
  for (const VertexSet& comp : components_without(p.graph(), make_vertex_set({a, b}))) {
    const auto& ra = p.rotation(a);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      Vertex ci = ra[i], next = ra[(i + 1) % ra.size()];
      if (!contains(comp, ci) || contains(comp, next)) continue;
      auto walk = face_walk(p.rotation(), Dart{a, ci});
      for (std::size_t j = 1; j < walk.size(); ++j) {
        if (walk[j] != b) continue;
        Vertex prev = walk[j - 1], after = walk[(j + 1) % walk.size()];
        if (!contains(comp, prev) || contains(comp, after) || after == a) continue;
        Graph g = p.graph();
        Rotation rot = p.rotation();
        add_chords(g, rot, walk, {{0, j}});
        PlaneGraph q = PlaneGraph::connected(std::move(g), std::move(rot), Dart{a, b});
        return q.with_outer(0);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Solved> solve_two_cut(const PlaneGraph& p, Vertex a, Vertex b, const CompleteOptions& opt) {
  if (p.graph().has_edge(a, b)) return solve_two_cut_edge(p, a, b, opt);
  auto q = insert_separating_edge(p, a, b);
  if (!q) return std::nullopt;
  auto s = solve_two_cut_edge(*q, a, b, opt);
  if (!s) return std::nullopt;
  s->counters.two_cut_with_edge -= 1;
  s->counters.two_cut_without_edge += 1;
  if (opt.paranoid) ensure(restricts_to(*s, p), "2-cut edge insertion");
  return s;
}

inline Solved solve_triconnected(const PlaneGraph& p, const CompleteOptions& opt) {
  const int n = p.n();
  const Graph& g = p.graph();
  FillCompletion fc = three_tree_completion(g);
  Vertex last = fc.pes.order.back();
  const auto r = p.rotation(last);
  ensure(r.size() == 3, "last vertex of the growth order has degree other than 3");
  if (components_without(g, make_vertex_set(r)).size() != 2)
    fail(ErrorKind::InternalK33, "neighbors of the last vertex do not split off exactly that vertex");

  Graph g2 = g;
  Rotation rot = p.rotation();
  for (std::size_t i = 0; i < 3; ++i) {
    Vertex ri = r[i], nx = r[(i + 1) % 3], pv = r[(i + 2) % 3];
    bool new_next = !g.has_edge(ri, nx), new_prev = !g.has_edge(ri, pv);
    if (!new_next) ensure(ccw_prev(rot, ri, last) == nx, "angle at a neighbor is not a triangle");
    if (!new_prev) ensure(ccw_next(rot, ri, last) == pv, "angle at a neighbor is not a triangle");
    std::vector<Vertex> repl;
    if (new_next) repl.push_back(nx);
    if (new_prev) repl.push_back(pv);
    auto& rr = rot[static_cast<std::size_t>(ri)];
    auto at = rr.begin() + static_cast<std::ptrdiff_t>(position_of(rr, last));
    at = rr.erase(at);
    rr.insert(at, repl.begin(), repl.end());
    g2.remove_edge(ri, last);
    if (new_next) g2.add_edge(ri, nx);
  }

  std::vector<Vertex> to_parent, to_child(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v)
    if (v != last) {
      to_child[static_cast<std::size_t>(v)] = static_cast<Vertex>(to_parent.size());
      to_parent.push_back(v);
    }
  Graph cg(n - 1);
  Rotation crot(static_cast<std::size_t>(n - 1));
  for (Vertex c = 0; c < n - 1; ++c) {
    Vertex v = to_parent[static_cast<std::size_t>(c)];
    for (Vertex w : rot[static_cast<std::size_t>(v)]) {
      crot[static_cast<std::size_t>(c)].push_back(to_child[static_cast<std::size_t>(w)]);
      cg.add_edge(c, to_child[static_cast<std::size_t>(w)]);
    }
  }
  Dart outer_dart{0, crot[0].front()};
  PlaneGraph child = PlaneGraph::connected(std::move(cg), std::move(crot), outer_dart);
  Solved s = lift(solve(child, opt), to_parent, n);
  auto tri = face_walk(s.rot, Dart{r[0], r[1]});
  ensure(tri == r, "neighbors of the removed vertex do not bound a face");
  stack_vertex(s.graph, s.rot, tri, last);
  s.pes.push_back(last);
  s.counters.triconnected += 1;
  return finish(std::move(s), p, opt, "triconnected glue");
}

inline Solved solve_two_connected(const PlaneGraph& p, const CompleteOptions& opt) {
  const Graph& g = p.graph();
  auto cut = first_two_cut(g);
  if (!cut) return solve_triconnected(p, opt);
  if (auto s = solve_two_cut(p, cut->first, cut->second, opt)) return *s;
  for (auto [a, b] : two_cuts(g))
    if (auto s = solve_two_cut(p, a, b, opt)) return *s;
  fail(ErrorKind::Internal, "no 2-cut admits a split");
}

inline Solved solve(const PlaneGraph& p, const CompleteOptions& opt) {
  if (p.n() <= 4) return solve_base(p);
  if (!is_connected(p.graph())) return solve_disconnected(p, opt);
  for (Vertex a : articulation_vertices(p.graph()))
    if (auto s = solve_articulation(p, a, opt)) return *s;
  if (!is_two_connected(p.graph())) fail(ErrorKind::Internal, "no cut vertex admits a split");
  return solve_two_connected(p, opt);
}

inline bool anchor_on_face(const PlaneGraph& p, FaceId f, const Anchor& an) {
  const Face& face = p.face(f);
  if (!an.is_edge()) {
    auto vs = face.vertices();
    return std::find(vs.begin(), vs.end(), an.u) != vs.end();
  }
  if (!p.graph().has_edge(an.u, an.v)) return false;
  return p.face_of({an.u, an.v}) == f || p.face_of({an.v, an.u}) == f;
}

inline void check_anchor(const PlaneGraph& p, const Anchor& an) {
  if (!p.graph().valid(an.u) || (an.is_edge() && !p.graph().valid(an.v)))
    fail(ErrorKind::BadVertex, "anchor vertex out of range");
  if (!anchor_on_face(p, p.outer(), an)) fail(ErrorKind::NoSuchFace, "anchor is not on the outer face");
}

inline Completion finalize(const PlaneGraph& p, Solved s, const std::optional<Anchor>& anchor);

}  // namespace detail

/// Moves the outer face of c.output to a face that refines the input's outer
/// face and touches the anchor (lowest such face id).
inline Completion rehost_outer(Completion c, const std::optional<Anchor>& anchor) {
  if (anchor) detail::check_anchor(c.input, *anchor);
  for (FaceId f = 0; f < static_cast<FaceId>(c.output.num_faces()); ++f) {
    if (c.provenance[static_cast<std::size_t>(f)] != c.input.outer()) continue;
    if (anchor && !detail::anchor_on_face(c.output, f, *anchor)) continue;
    c.output = c.output.with_outer(f);
    return c;
  }
  fail(ErrorKind::NoSuchFace, "no output face refines the outer face at the anchor");
}

namespace detail {

inline Completion finalize(const PlaneGraph& p, Solved s, const std::optional<Anchor>& anchor) {
  Completion c;
  c.input = p;
  c.added = edges_beyond(s.graph, p.graph());
  c.output = as_plane(s);
  c.pes = Pes{s.pes, 3};
  c.counters = s.counters;
  c.provenance = face_provenance(c.output, c.added);
  c = rehost_outer(std::move(c), anchor);
  ensure(extends(c.output, p, c.added), "completion does not extend the input drawing");
  ensure(verify_pes(c.output.graph(), c.pes, true), "completion order is not a 3-tree order");
  return c;
}

inline void check_input(const PlaneGraph& p, const std::optional<Anchor>& anchor) {
  if (p.n() < 3) fail(ErrorKind::TooSmall, "completion needs at least 3 vertices");
  if (anchor) check_anchor(p, *anchor);
  if (!is_partial_3tree(p.graph())) fail(ErrorKind::NotPartial3Tree, "graph has treewidth above 3");
}

}  // namespace detail

inline Completion complete(const PlaneGraph& p, const std::optional<Anchor>& anchor = std::nullopt,
                           const CompleteOptions& opt = {}) {
  detail::check_input(p, anchor);
  return detail::finalize(p, detail::solve(p, opt), anchor);
}

/// Single steps at the top level (recursion below them uses complete()'s
/// dispatch). Split steps need n >= 4, the 3-connected step n >= 5.
inline Completion case_disconnected(const PlaneGraph& p, const std::optional<Anchor>& anchor = std::nullopt,
                             const CompleteOptions& opt = {}) {
  detail::check_input(p, anchor);
  if (p.n() < 4) fail(ErrorKind::TooSmall, "split steps need at least 4 vertices");
  if (is_connected(p.graph())) fail(ErrorKind::NotSeparating, "graph is connected");
  return detail::finalize(p, detail::solve_disconnected(p, opt), anchor);
}

inline Completion case_articulation(const PlaneGraph& p, Vertex a, const std::optional<Anchor>& anchor = std::nullopt,
                             const CompleteOptions& opt = {}) {
  detail::check_input(p, anchor);
  if (p.n() < 4) fail(ErrorKind::TooSmall, "split steps need at least 4 vertices");
  if (!p.graph().valid(a)) fail(ErrorKind::BadVertex, "vertex out of range");
  if (!is_connected(p.graph())) fail(ErrorKind::DisconnectedInput, "graph is disconnected");
  if (!contains(articulation_vertices(p.graph()), a)) fail(ErrorKind::NotArticulation, "vertex is not a cut vertex");
  auto s = detail::solve_articulation(p, a, opt);
  if (!s) fail(ErrorKind::SplitAcrossFaces, "no component fits around the cut vertex");
  return detail::finalize(p, std::move(*s), anchor);
}

inline Completion case_two_cut(const PlaneGraph& p, Vertex a, Vertex b, const std::optional<Anchor>& anchor = std::nullopt,
                             const CompleteOptions& opt = {}) {
  detail::check_input(p, anchor);
  if (p.n() < 4) fail(ErrorKind::TooSmall, "split steps need at least 4 vertices");
  if (!p.graph().valid(a) || !p.graph().valid(b) || a == b) fail(ErrorKind::BadVertex, "bad cut vertices");
  if (!is_two_connected(p.graph())) fail(ErrorKind::NotTwoConnected, "graph is not 2-connected");
  if (components_without(p.graph(), make_vertex_set({a, b})).size() < 2) fail(ErrorKind::NotTwoCut, "pair does not separate");
  auto s = detail::solve_two_cut(p, a, b, opt);
  if (!s) fail(ErrorKind::SplitAcrossFaces, "no component fits along the cut");
  return detail::finalize(p, std::move(*s), anchor);
}

inline Completion case_triconnected(const PlaneGraph& p, const std::optional<Anchor>& anchor = std::nullopt,
                                    const CompleteOptions& opt = {}) {
  detail::check_input(p, anchor);
  if (p.n() < 5) fail(ErrorKind::TooSmall, "the 3-connected step needs at least 5 vertices");
  if (!is_two_connected(p.graph()) || first_two_cut(p.graph())) fail(ErrorKind::NotTwoCut, "graph is not 3-connected");
  return detail::finalize(p, detail::solve_triconnected(p, opt), anchor);
}

/// Outcome of each completion invariant, checked from the outputs alone.
struct CompletionChecks {
  bool spanning = false;          // same vertices, input edges kept, added edges new
  bool edge_count = false;        // 3n - 6 edges
  bool triangular = false;        // 2n - 4 faces, all triangles
  bool pes = false;               // strict 3-tree order
  bool extends = false;           // deleting added edges gives the input drawing
  bool provenance = false;        // faces map onto input faces along kept darts
  bool anchor = true;             // anchor (if any) on the outer triangle

  bool all() const { return spanning && edge_count && triangular && pes && extends && provenance && anchor; }
};

inline CompletionChecks verify_completion(const Completion& c, const std::optional<Anchor>& anchor = std::nullopt) {
  CompletionChecks r;
  const Graph& in = c.input.graph();
  const Graph& out = c.output.graph();
  const int n = in.n();
  if (out.n() != n) return r;

  r.spanning = out.num_edges() == in.num_edges() + c.added.size();
  for (const Edge& e : in.edges()) r.spanning = r.spanning && out.has_edge(e.u, e.v);
  for (const Edge& e : c.added) r.spanning = r.spanning && out.has_edge(e.u, e.v) && !in.has_edge(e.u, e.v);
  r.edge_count = n >= 3 && out.num_edges() == static_cast<std::size_t>(3 * n - 6);
  r.triangular = c.output.num_faces() == static_cast<std::size_t>(2 * n - 4);
  for (const Face& f : c.output.faces()) r.triangular = r.triangular && f.is_triangle();
  try {
    r.pes = verify_pes(out, c.pes, true);
  } catch (const Error&) {
    r.pes = false;
  }
  try {
    r.extends = extends(c.output, c.input, c.added);
  } catch (const Error&) {
    r.extends = false;
  }

  r.provenance = c.provenance.size() == c.output.num_faces() &&
                 c.provenance[static_cast<std::size_t>(c.output.outer())] == c.input.outer();
  std::vector<char> hit(c.input.num_faces(), 0);
  for (std::size_t f = 0; r.provenance && f < c.provenance.size(); ++f) {
    FaceId g = c.provenance[f];
    if (g < 0 || static_cast<std::size_t>(g) >= c.input.num_faces()) {
      r.provenance = false;
      break;
    }
    hit[static_cast<std::size_t>(g)] = 1;
    for (const auto& walk : c.output.face(static_cast<FaceId>(f)).walks)
      for (const Dart& d : walk)
        if (in.has_edge(d.from, d.to) && c.input.face_of(d) != g) r.provenance = false;
  }
  for (char h : hit) r.provenance = r.provenance && h;

  if (anchor) {
    auto vs = c.output.face(c.output.outer()).vertices();
    auto on = [&](Vertex v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
    r.anchor = on(anchor->u) && (!anchor->is_edge() || on(anchor->v));
  }
  return r;
}

}  // namespace p3t
