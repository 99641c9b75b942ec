#pragma once

// Planarity testing and embedding. The combinatorial embedding comes from
// Boost's Boyer-Myrvold implementation and is re-validated by PlaneGraph's
// own face tracing.

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/plane.hpp"

namespace p3t {

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

inline bool boost_rotation(const Graph& g, Rotation* rot) {
  BoostGraph bg(static_cast<std::size_t>(g.n()));
  for (const Edge& e : g.edges()) boost::add_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), bg);
  int ei = 0;
  boost::graph_traits<BoostGraph>::edge_iterator it, end;
  for (boost::tie(it, end) = boost::edges(bg); it != end; ++it) boost::put(boost::edge_index, bg, *it, ei++);

  std::vector<std::vector<BoostEdge>> embedding(static_cast<std::size_t>(g.n()));
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) return false;
  rot->assign(static_cast<std::size_t>(g.n()), {});
  for (Vertex v = 0; v < g.n(); ++v)
    for (const BoostEdge& e : embedding[static_cast<std::size_t>(v)]) {
      auto s = static_cast<Vertex>(boost::source(e, bg));
      auto t = static_cast<Vertex>(boost::target(e, bg));
      (*rot)[static_cast<std::size_t>(v)].push_back(s == v ? t : s);
    }
  return true;
}

}  // namespace detail

/// Some noncrossing drawing of g. Components are placed side by side in one
/// common face, which is designated outer. Throws Nonplanar otherwise.
inline PlaneGraph embed_planar(const Graph& g) {
  if (g.n() >= 3 && g.num_edges() > static_cast<std::size_t>(3 * g.n() - 6))
    fail(ErrorKind::Nonplanar, "more than 3n-6 edges");
  Rotation rot;
  if (!detail::boost_rotation(g, &rot)) fail(ErrorKind::Nonplanar, "graph is not planar");
  auto comps = connected_components(g);
  std::vector<WalkRef> shared;
  for (const auto& c : comps) {
    Vertex v = c.front();
    const auto& r = rot[static_cast<std::size_t>(v)];
    shared.push_back(r.empty() ? WalkRef::isolated(v) : WalkRef::dart(v, *std::min_element(r.begin(), r.end())));
  }
  std::vector<std::vector<WalkRef>> groups;
  if (shared.size() > 1) groups.push_back(shared);
  WalkRef outer = shared.empty() ? WalkRef::isolated(0) : shared.front();
  return PlaneGraph(g, std::move(rot), groups, outer);
}

}  // namespace p3t
