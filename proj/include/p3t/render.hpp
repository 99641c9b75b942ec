#pragma once

// Straight-line drawings of plane triangulations. The outer triangle is
// pinned to an equilateral frame of circumradius 1 and every other vertex
// sits at the average of its neighbors (Tutte), which for a 3-connected
// triangulation yields a noncrossing drawing with convex faces.
//
// Uniform weights shrink deeply nested triangles exponentially, so plane
// 3-trees also get a placement along their stacking order: a vertex stacked
// into xyz takes barycentric weights (size of the opposite child region + 1),
// which keeps every face area above roughly 1/n^2.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/ktree.hpp"
#include "p3t/plane.hpp"

namespace p3t {

using Point = std::array<double, 2>;

struct Layout {
  std::vector<Point> pos;
  double residual = 0.0;  // max-norm of the barycentric equations
};

inline bool is_triangulation(const PlaneGraph& p) {
  const int n = p.n();
  if (n < 3 || p.graph().num_edges() != static_cast<std::size_t>(3 * n - 6)) return false;
  return std::all_of(p.faces().begin(), p.faces().end(), [](const Face& f) { return f.is_triangle(); });
}

namespace detail {

inline void pin_outer(const PlaneGraph& p, Layout& out, std::vector<Vertex>* order) {
  const auto& outer = p.face(p.outer()).walks.front();
  const double pi = std::acos(-1.0);
  // The outer walk runs clockwise in the plane.
  for (int i = 0; i < 3; ++i) {
    Vertex v = outer[static_cast<std::size_t>(i)].from;
    double angle = pi / 2 - 2 * pi * i / 3;
    out.pos[static_cast<std::size_t>(v)] = {std::cos(angle), std::sin(angle)};
    if (order) order->push_back(v);
  }
}

}  // namespace detail

inline Layout tutte_layout(const PlaneGraph& p) {
  if (!is_triangulation(p)) fail(ErrorKind::NotTriangulation, "layout needs a plane triangulation");
  const int n = p.n();
  Layout out;
  out.pos.assign(static_cast<std::size_t>(n), Point{0.0, 0.0});
  std::vector<Vertex> pinned;
  detail::pin_outer(p, out, &pinned);
  std::vector<int> fixed(static_cast<std::size_t>(n), -1);
  for (Vertex v : pinned) fixed[static_cast<std::size_t>(v)] = 0;
  if (n == 3) return out;

  std::vector<int> index(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (Vertex v = 0; v < n; ++v)
    if (fixed[static_cast<std::size_t>(v)] < 0) index[static_cast<std::size_t>(v)] = k++;

  std::vector<Eigen::Triplet<double>> entries;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k, 2);
  for (Vertex v = 0; v < n; ++v) {
    int row = index[static_cast<std::size_t>(v)];
    if (row < 0) continue;
    entries.emplace_back(row, row, static_cast<double>(p.graph().degree(v)));
    for (Vertex w : p.graph().neighbors(v)) {
      int col = index[static_cast<std::size_t>(w)];
      if (col >= 0) {
        entries.emplace_back(row, col, -1.0);
      } else {
        rhs(row, 0) += out.pos[static_cast<std::size_t>(w)][0];
        rhs(row, 1) += out.pos[static_cast<std::size_t>(w)][1];
      }
    }
  }
  Eigen::SparseMatrix<double> a(k, k);
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Internal, "barycentric system is singular");
  Eigen::MatrixXd x = solver.solve(rhs);
  out.residual = (a * x - rhs).cwiseAbs().maxCoeff();
  for (Vertex v = 0; v < n; ++v) {
    int row = index[static_cast<std::size_t>(v)];
    if (row >= 0) out.pos[static_cast<std::size_t>(v)] = {x(row, 0), x(row, 1)};
  }
  return out;
}


/// Placement along the stacking order of a plane 3-tree (see top of file).
inline Layout stacked_layout(const PlaneGraph& p) {
  if (!is_triangulation(p)) fail(ErrorKind::NotTriangulation, "layout needs a plane triangulation");
  const int n = p.n();
  const Graph& g = p.graph();
  Layout out;
  out.pos.assign(static_cast<std::size_t>(n), Point{0.0, 0.0});
  std::vector<Vertex> base;
  detail::pin_outer(p, out, &base);
  if (n == 3) return out;
  const std::vector<Vertex> order = reroot_pes(g, base).order;
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  using Tri = std::array<Vertex, 3>;
  auto key = [](Tri t) {
    std::sort(t.begin(), t.end());
    return t;
  };
  std::vector<Tri> host(static_cast<std::size_t>(n));
  std::map<Tri, Vertex> stacked_in;
  for (std::size_t i = 3; i < order.size(); ++i) {
    Vertex u = order[i];
    Tri t{};
    int k = 0;
    for (Vertex w : g.neighbors(u))
      if (rank[static_cast<std::size_t>(w)] < rank[static_cast<std::size_t>(u)]) t[static_cast<std::size_t>(k++)] = w;
    ensure(k == 3, "stacking order is not a 3-tree order");
    host[static_cast<std::size_t>(u)] = t;
    ensure(stacked_in.emplace(key(t), u).second, "two vertices stacked into one triangle");
  }
  // Region sizes, children before parents.
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  auto region = [&](Tri t) {
    auto it = stacked_in.find(key(t));
    return it == stacked_in.end() ? 0 : size[static_cast<std::size_t>(it->second)];
  };
  for (std::size_t i = order.size(); i-- > 3;) {
    Vertex u = order[i];
    const Tri& t = host[static_cast<std::size_t>(u)];
    size[static_cast<std::size_t>(u)] = 1 + region({u, t[1], t[2]}) + region({t[0], u, t[2]}) + region({t[0], t[1], u});
  }
  for (std::size_t i = 3; i < order.size(); ++i) {
    Vertex u = order[i];
    const Tri& t = host[static_cast<std::size_t>(u)];
    const double w[3] = {region({u, t[1], t[2]}) + 1.0, region({t[0], u, t[2]}) + 1.0, region({t[0], t[1], u}) + 1.0};
    const double total = w[0] + w[1] + w[2];
    Point q{0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
      q[0] += w[j] / total * out.pos[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])][0];
      q[1] += w[j] / total * out.pos[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])][1];
    }
    out.pos[static_cast<std::size_t>(u)] = q;
  }
  return out;
}

namespace detail {

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline double point_segment_distance(const Point& q, const Point& a, const Point& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(q[0] - (a[0] + t * dx), q[1] - (a[1] + t * dy));
}

// Proper crossing with every orientation clear of rounding noise; nearly
// collinear configurations are left to the endpoint distances.
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  constexpr double eps = 1e-12;
  const double d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
  return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

inline double segment_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (segments_cross(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

}  // namespace detail

struct LayoutAudit {
  std::size_t close_pairs = 0;     // disjoint edges crossing or nearer than the tolerance
  std::size_t overlaps = 0;        // edges at a common vertex leaving in the same direction
  std::size_t flipped_faces = 0;   // bounded faces not drawn counterclockwise
  double min_clearance = std::numeric_limits<double>::infinity();

  bool ok() const { return close_pairs == 0 && overlaps == 0 && flipped_faces == 0; }
};

/// Pairwise segment check. Coordinates are in the unit frame, so the
/// tolerance is absolute.
inline LayoutAudit audit_layout(const PlaneGraph& p, const Layout& l, double tol = 1e-9) {
  LayoutAudit r;
  const EdgeList edges = p.graph().edges();
  auto at = [&](Vertex v) -> const Point& { return l.pos[static_cast<std::size_t>(v)]; };
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      Vertex shared = -1, x = -1, y = -1;
      if (e.u == f.u || e.u == f.v) shared = e.u;
      if (e.v == f.u || e.v == f.v) shared = e.v;
      if (shared < 0) {
        double dist = detail::segment_distance(at(e.u), at(e.v), at(f.u), at(f.v));
        r.min_clearance = std::min(r.min_clearance, dist);
        if (dist <= tol) ++r.close_pairs;
        continue;
      }
      x = e.u == shared ? e.v : e.u;
      y = f.u == shared ? f.v : f.u;
      const Point& s = at(shared);
      const double lx = std::hypot(at(x)[0] - s[0], at(x)[1] - s[1]);
      const double ly = std::hypot(at(y)[0] - s[0], at(y)[1] - s[1]);
      const double sine = detail::cross(s, at(x), at(y)) / (lx * ly);
      const double dot = (at(x)[0] - s[0]) * (at(y)[0] - s[0]) + (at(x)[1] - s[1]) * (at(y)[1] - s[1]);
      if (lx <= tol || ly <= tol || (std::abs(sine) * std::min(lx, ly) <= tol && dot > 0)) ++r.overlaps;
    }
  for (const Face& f : p.faces()) {
    if (f.id == p.outer()) continue;
    const auto& w = f.walks.front();
    double area = 0;
    for (const Dart& d : w) area += at(d.from)[0] * at(d.to)[1] - at(d.to)[0] * at(d.from)[1];
    if (!(area > 0)) ++r.flipped_faces;
  }
  return r;
}

struct ChosenLayout {
  Layout layout;
  LayoutAudit audit;
  bool stacked = false;  // fell back to the stacking-order placement
};

/// Uniform Tutte placement unless its clearance drops below `comfortable`
/// and p is a 3-tree whose stacked placement does better.
inline ChosenLayout choose_layout(const PlaneGraph& p, double tol = 1e-9, double comfortable = 1e-6) {
  ChosenLayout c;
  c.layout = tutte_layout(p);
  c.audit = audit_layout(p, c.layout, tol);
  if (c.audit.ok() && c.audit.min_clearance >= comfortable) return c;
  Layout alt;
  try {
    alt = stacked_layout(p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAThreeTree) return c;
    throw;
  }
  LayoutAudit a = audit_layout(p, alt, tol);
  auto faults = [](const LayoutAudit& x) { return x.close_pairs + x.overlaps + x.flipped_faces; };
  if (faults(a) < faults(c.audit) || (faults(a) == faults(c.audit) && a.min_clearance > c.audit.min_clearance)) {
    c.layout = std::move(alt);
    c.audit = a;
    c.stacked = true;
  }
  return c;
}

/// SVG 1.1 drawing; edges in `dashed` are drawn dashed, all others solid.
inline std::string render_svg(const PlaneGraph& p, const EdgeList& dashed) {
  const Layout l = choose_layout(p).layout;
  EdgeList d = normalized(dashed);
  const double size = 800, margin = 40, scale = (size - 2 * margin) / 2;
  auto px = [&](const Point& q) {
    return std::array<double, 2>{size / 2 + scale * q[0], size / 2 - scale * q[1] + scale * 0.25};
  };
  std::ostringstream out;
  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Edge& e : p.graph().edges()) {
    auto a = px(l.pos[static_cast<std::size_t>(e.u)]), b = px(l.pos[static_cast<std::size_t>(e.v)]);
    bool added = std::binary_search(d.begin(), d.end(), e);
    std::snprintf(buf, sizeof buf,
                  "<line class=\"%s\" x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\" stroke=\"%s\" stroke-width=\"1.5\"%s/>\n",
                  added ? "added" : "original", a[0], a[1], b[0], b[1], added ? "#c0392b" : "black",
                  added ? " stroke-dasharray=\"6 4\"" : "");
    out << buf;
  }
  for (Vertex v = 0; v < p.n(); ++v) {
    auto a = px(l.pos[static_cast<std::size_t>(v)]);
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n"
                  "<text x=\"%.6f\" y=\"%.6f\" font-size=\"10\" font-family=\"sans-serif\">%d</text>\n",
                  a[0], a[1], a[0] + 5, a[1] - 5, v);
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace p3t
