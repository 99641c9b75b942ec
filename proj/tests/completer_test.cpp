#include <gtest/gtest.h>

#include <algorithm>

#include "p3t/completer.hpp"
#include "p3t/embed.hpp"
#include "p3t/gen.hpp"
#include "test_graphs.hpp"

namespace p3t {
namespace {

using namespace p3t::testing;

// Checks the completion invariants without going through the completer's
// own bookkeeping: edge counts, faces, growth order, restriction, and
// provenance against the darts that survive in the input.
void expect_valid(const Completion& c) {
  const int n = c.input.n();
  const Graph& out = c.output.graph();
  ASSERT_EQ(out.n(), n);
  EXPECT_EQ(out.num_edges(), static_cast<std::size_t>(3 * n - 6));
  EXPECT_EQ(c.output.num_faces(), static_cast<std::size_t>(2 * n - 4));
  for (const Face& f : c.output.faces()) EXPECT_TRUE(f.is_triangle());
  for (const Edge& e : c.input.graph().edges()) EXPECT_TRUE(out.has_edge(e.u, e.v));
  for (const Edge& e : c.added) {
    EXPECT_TRUE(out.has_edge(e.u, e.v));
    EXPECT_FALSE(c.input.graph().has_edge(e.u, e.v));
  }
  EXPECT_EQ(out.num_edges(), c.input.graph().num_edges() + c.added.size());
  EXPECT_TRUE(verify_pes(out, c.pes, true));
  EXPECT_TRUE(extends(c.output, c.input, c.added));
  ASSERT_EQ(c.provenance.size(), c.output.num_faces());
  for (const Face& f : c.output.faces())
    for (const Dart& d : f.walks[0])
      if (c.input.graph().has_edge(d.from, d.to)) {
        EXPECT_EQ(c.input.face_of(d), c.provenance[static_cast<std::size_t>(f.id)]);
      }
  EXPECT_EQ(c.provenance[static_cast<std::size_t>(c.output.outer())], c.input.outer());
}

bool on_outer(const Completion& c, const Anchor& a) {
  auto vs = c.output.face(c.output.outer()).vertices();
  auto has = [&](Vertex v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
  return has(a.u) && (!a.is_edge() || has(a.v));
}

PlaneGraph side_by_side_triangles() {
  Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  Rotation rot{{1, 2}, {2, 0}, {0, 1}, {4, 5}, {5, 3}, {3, 4}};
  return PlaneGraph(g, rot, {{WalkRef::dart(1, 0), WalkRef::dart(4, 3)}}, WalkRef::dart(1, 0));
}

PlaneGraph drawn(const Graph& g) { return embed_planar(g); }

TEST(CompleterTest, TriangleUnchanged) {
  Completion c = complete(triangle_plane());
  EXPECT_EQ(c.output, c.input);
  EXPECT_TRUE(c.added.empty());
  EXPECT_EQ(c.pes.order, (std::vector<Vertex>{0, 1, 2}));
  expect_valid(c);
}

TEST(CompleterTest, FiveCycle) {
  Completion c = complete(drawn(cycle_graph(5)));
  EXPECT_EQ(c.output.graph().num_edges(), 9u);
  EXPECT_EQ(c.added.size(), 4u);
  expect_valid(c);
}

TEST(CompleterTest, IdempotentOnPlaneThreeTrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PlaneGraph t = gen_plane_3tree(20, seed).plane;
    for (FaceId f : {FaceId{0}, FaceId{5}, t.outer()}) {
      Completion c = complete(t.with_outer(f));
      EXPECT_TRUE(c.added.empty());
      EXPECT_EQ(c.output, t.with_outer(f));
    }
  }
}

TEST(CompleterTest, DisjointTriangles) {
  for (const PlaneGraph& p : {nested_triangles(), side_by_side_triangles()}) {
    Completion c = case_disconnected(p);
    EXPECT_EQ(c.added.size(), 6u);
    EXPECT_EQ(c.output.graph().num_edges(), 12u);
    expect_valid(c);
    // Connector degrees on each side are 3, 2, 1.
    for (VertexSet side : {VertexSet{0, 1, 2}, VertexSet{3, 4, 5}}) {
      std::vector<int> deg;
      for (Vertex v : side)
        deg.push_back(static_cast<int>(std::count_if(c.added.begin(), c.added.end(),
                                                     [&](const Edge& e) { return e.u == v || e.v == v; })));
      std::sort(deg.begin(), deg.end());
      EXPECT_EQ(deg, (std::vector<int>{1, 2, 3}));
    }
    EXPECT_EQ(c.counters.disconnected, 1u);
  }
}

TEST(CompleterTest, TriangleAndIsolatedVertex) {
  Graph g(4, {{0, 1}, {1, 2}, {0, 2}});
  Rotation rot{{1, 2}, {2, 0}, {0, 1}, {}};
  for (WalkRef host : {WalkRef::dart(0, 1), WalkRef::dart(1, 0)}) {
    PlaneGraph p(g, rot, {{host, WalkRef::isolated(3)}}, WalkRef::dart(1, 0));
    Completion c = case_disconnected(p);
    EXPECT_EQ(c.output.graph(), complete_graph(4));
    EXPECT_EQ(c.added.size(), 3u);
    EXPECT_EQ(c.pes.order.back(), 3);
    expect_valid(c);
  }
}

TEST(CompleterTest, TriangleAndIsolatedEdge) {
  Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  Rotation rot{{1, 2}, {2, 0}, {0, 1}, {4}, {3}};
  for (WalkRef host : {WalkRef::dart(0, 1), WalkRef::dart(1, 0)}) {
    PlaneGraph p(g, rot, {{host, WalkRef::dart(3, 4)}}, WalkRef::dart(1, 0));
    Completion c = case_disconnected(p);
    EXPECT_EQ(c.output.graph().num_edges(), 9u);
    expect_valid(c);
  }
}

TEST(CompleterTest, Bowtie) {
  Completion c = case_articulation(bowtie_plane(), 0);
  EXPECT_EQ(c.added.size(), 3u);
  EXPECT_EQ(c.output.graph().num_edges(), 9u);
  EXPECT_EQ(c.counters.articulation, 1u);
  expect_valid(c);
  EXPECT_THROW(case_articulation(bowtie_plane(), 1), Error);
}

TEST(CompleterTest, BowtieWithPendant) {
  Graph g = bowtie();
  g = Graph(6, g.edges());
  g.add_edge(0, 5);
  for (FaceId f = 0; f < 3; ++f) {
    PlaneGraph p = drawn(g);
    Completion c = case_articulation(p.with_outer(f % static_cast<FaceId>(p.num_faces())), 0);
    expect_valid(c);
  }
}

TEST(CompleterTest, TrianglesJoinedByPath) {
  Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}});
  PlaneGraph p = drawn(g);
  for (Vertex a : {2, 3, 4}) {
    Completion c = case_articulation(p, a);
    EXPECT_EQ(c.output.graph().num_edges(), 15u);
    expect_valid(c);
  }
}

TEST(CompleterTest, KFourMinusEdge) {
  Graph g = complete_graph(4);
  g.remove_edge(2, 3);
  PlaneGraph p = drawn(g);
  Completion c = case_two_cut(p, 0, 1);
  EXPECT_EQ(c.added, (EdgeList{{2, 3}}));
  EXPECT_EQ(c.output.graph(), complete_graph(4));
  EXPECT_EQ(c.counters.two_cut_with_edge, 1u);
  expect_valid(c);
  EXPECT_THROW(case_two_cut(p, 0, 2), Error);
}

TEST(CompleterTest, FourCycle) {
  PlaneGraph p = drawn(cycle_graph(4));
  Completion c = case_two_cut(p, 0, 2);
  EXPECT_EQ(c.output.graph(), complete_graph(4));
  EXPECT_TRUE(std::find(c.added.begin(), c.added.end(), Edge(0, 2)) != c.added.end());
  EXPECT_EQ(c.counters.two_cut_without_edge, 1u);
  expect_valid(c);
}

TEST(CompleterTest, GluedTrianglesOneSubdivided) {
  Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {3, 4}, {0, 4}});
  Completion c = case_two_cut(drawn(g), 0, 1);
  EXPECT_EQ(c.output.graph().num_edges(), 9u);
  expect_valid(c);
}

TEST(CompleterTest, TriconnectedSmall) {
  PlaneGraph t = gen_plane_3tree(5, 1).plane;
  Completion same = case_triconnected(t);
  EXPECT_TRUE(same.added.empty());
  EXPECT_EQ(same.output, t);

  // Dropping the edge opposite the degree-4 vertex leaves a wheel.
  int wheels = 0;
  for (const Edge& e : t.graph().edges()) {
    PlaneGraph w = delete_edges_plane(t, {e});
    if (!is_two_connected(w.graph()) || first_two_cut(w.graph())) continue;
    ++wheels;
    Completion c = case_triconnected(w);
    EXPECT_EQ(c.added.size(), 1u);
    EXPECT_EQ(c.counters.triconnected, 1u);
    expect_valid(c);
  }
  EXPECT_GT(wheels, 0);
  EXPECT_THROW(case_triconnected(bowtie_plane()), Error);
}

TEST(CompleterTest, TriconnectedRandom) {
  int found = 0;
  for (std::uint64_t seed = 0; found < 5 && seed < 500; ++seed) {
    PlaneGraph p = subsample_plane(gen_plane_3tree(50, seed).plane, 0.93, seed);
    if (!is_two_connected(p.graph()) || first_two_cut(p.graph())) continue;
    ++found;
    Completion c = complete(p, std::nullopt, CompleteOptions{true});
    EXPECT_GT(c.counters.triconnected, 0u);
    expect_valid(c);
  }
  EXPECT_EQ(found, 5);
}

TEST(CompleterTest, SelectInnerPart) {
  InnerPart nested = select_inner_part(nested_triangles(), {});
  EXPECT_EQ(nested.component, (VertexSet{3, 4, 5}));
  EXPECT_EQ(nested.g2.plane.n(), 3);
  EXPECT_NE(nested.f, nested.g2.plane.outer());

  InnerPart beside = select_inner_part(side_by_side_triangles(), {});
  EXPECT_EQ(beside.component, (VertexSet{0, 1, 2}));
  EXPECT_EQ(beside.f, beside.g2.plane.outer());

  InnerPart lobe = select_inner_part(bowtie_plane(), {0});
  EXPECT_EQ(lobe.component, (VertexSet{1, 2}));
  EXPECT_EQ(lobe.g1.to_parent, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(lobe.g2.to_parent, (std::vector<Vertex>{0, 3, 4}));

  Graph g = complete_graph(4);
  g.remove_edge(2, 3);
  InnerPart half = select_inner_part(drawn(g), {0, 1});
  EXPECT_EQ(half.component, (VertexSet{2}));
  EXPECT_EQ(half.g2.to_parent, (std::vector<Vertex>{0, 1, 3}));

  EXPECT_THROW(select_inner_part(triangle_plane(), {0}), Error);
}

TEST(CompleterTest, Rehost) {
  Completion t = complete(triangle_plane(), Anchor::vertex(0));
  EXPECT_EQ(t.output, triangle_plane());

  PlaneGraph nested = nested_triangles();
  for (Vertex a : {0, 1, 2}) {
    Completion c = complete(nested, Anchor::vertex(a));
    EXPECT_TRUE(on_outer(c, Anchor::vertex(a)));
    expect_valid(c);
  }
  EXPECT_THROW(complete(nested, Anchor::vertex(3)), Error);

  Graph g = complete_graph(4);
  g.remove_edge(2, 3);
  PlaneGraph p = drawn(g);
  for (FaceId f = 0; f < static_cast<FaceId>(p.num_faces()); ++f) {
    PlaneGraph q = p.with_outer(f);
    if (q.face_of({0, 1}) != f && q.face_of({1, 0}) != f) continue;
    Completion c = complete(q, Anchor::edge(0, 1));
    EXPECT_TRUE(on_outer(c, Anchor::edge(0, 1)));
    expect_valid(c);
  }
}

TEST(CompleterTest, Errors) {
  Graph two(2, {{0, 1}});
  PlaneGraph p2 = PlaneGraph::connected(two, {{1}, {0}}, {0, 1});
  try {
    complete(p2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooSmall);
  }
  try {
    complete(drawn(octahedron()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPartial3Tree);
  }
}

TEST(CompleterTest, RandomSubsamples) {
  CaseCounters total;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    int n = 3 + static_cast<int>(seed % 45);
    PlaneGraph p = subsample_plane(gen_plane_3tree(n, seed).plane, 0.3 * static_cast<double>(seed % 3 + 1), seed + 7);
    Completion c = complete(p, std::nullopt, CompleteOptions{true});
    expect_valid(c);
    total += c.counters;
  }
  EXPECT_GT(total.disconnected, 0u);
  EXPECT_GT(total.articulation, 0u);
  EXPECT_GT(total.two_cut_with_edge, 0u);
  EXPECT_GT(total.two_cut_without_edge, 0u);
  EXPECT_GT(total.triconnected, 0u);
}

TEST(CompleterTest, RandomAnchors) {
  Rng rng(99);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PlaneGraph p = subsample_plane(gen_plane_3tree(4 + static_cast<int>(seed % 30), seed).plane, 0.6, seed);
    const Face& outer = p.face(p.outer());
    auto vs = outer.vertices();
    Anchor a = Anchor::vertex(vs[rng.below(vs.size())]);
    if (!outer.walks.empty() && rng.below(2) == 0) {
      const auto& walk = outer.walks[rng.below(outer.walks.size())];
      const Dart& d = walk[rng.below(walk.size())];
      a = Anchor::edge(d.from, d.to);
    }
    Completion c = complete(p, a);
    EXPECT_TRUE(on_outer(c, a));
    expect_valid(c);
  }
}

}  // namespace
}  // namespace p3t
