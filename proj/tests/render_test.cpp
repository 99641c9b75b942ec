#include <gtest/gtest.h>

#include "p3t/completer.hpp"
#include "p3t/embed.hpp"
#include "p3t/gen.hpp"
#include "p3t/render.hpp"
#include "test_graphs.hpp"

namespace p3t {
namespace {

using namespace p3t::testing;

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t c = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++c;
  return c;
}

TEST(RenderTest, KFourBarycenter) {
  PlaneGraph k4 = k4_plane();
  Layout l = tutte_layout(k4);
  auto outer = k4.face(k4.outer()).vertices();
  Vertex inner = 0;
  while (std::find(outer.begin(), outer.end(), inner) != outer.end()) ++inner;
  EXPECT_NEAR(l.pos[static_cast<std::size_t>(inner)][0], 0.0, 1e-12);
  EXPECT_NEAR(l.pos[static_cast<std::size_t>(inner)][1], 0.0, 1e-12);
  EXPECT_TRUE(audit_layout(k4, l).ok());
  Layout s = stacked_layout(k4);
  EXPECT_NEAR(s.pos[static_cast<std::size_t>(inner)][0], 0.0, 1e-12);
  EXPECT_NEAR(s.pos[static_cast<std::size_t>(inner)][1], 0.0, 1e-12);
  EXPECT_EQ(k4.num_faces(), 4u);
  EXPECT_EQ(count_of(render_svg(k4, {}), "<line"), 6u);
}

TEST(RenderTest, TriangleFrame) {
  Layout l = tutte_layout(triangle_plane());
  for (const Point& q : l.pos) EXPECT_NEAR(std::hypot(q[0], q[1]), 1.0, 1e-12);
  EXPECT_TRUE(audit_layout(triangle_plane(), l).ok());
}

TEST(RenderTest, CompletedFiveCycle) {
  Completion c = complete(embed_planar(cycle_graph(5)));
  std::string svg = render_svg(c.output, c.added);
  EXPECT_EQ(count_of(svg, "class=\"original\""), 5u);
  EXPECT_EQ(count_of(svg, "class=\"added\""), 4u);
  EXPECT_EQ(count_of(svg, "stroke-dasharray"), 4u);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
  EXPECT_TRUE(choose_layout(c.output).audit.ok());
}

TEST(RenderTest, CompletedTwoTriangles) {
  Completion c = complete(nested_triangles());
  std::string svg = render_svg(c.output, c.added);
  EXPECT_EQ(count_of(svg, "class=\"added\""), 6u);
  EXPECT_EQ(count_of(svg, "class=\"original\""), 6u);
}

TEST(RenderTest, RejectsNonTriangulations) {
  try {
    tutte_layout(embed_planar(cycle_graph(5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTriangulation);
  }
  EXPECT_THROW(render_svg(nested_triangles(), {}), Error);
  EXPECT_THROW(stacked_layout(bowtie_plane()), Error);
}

TEST(RenderTest, ResidualAndAudit) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PlaneGraph t = gen_plane_3tree(30 + 10 * static_cast<int>(seed), seed).plane;
    Layout l = tutte_layout(t);
    EXPECT_LT(l.residual, 1e-10);
    EXPECT_TRUE(audit_layout(t, stacked_layout(t)).ok());
    EXPECT_TRUE(choose_layout(t).audit.ok());
  }
}

TEST(RenderTest, AuditCatchesDefects) {
  PlaneGraph t = gen_plane_3tree(12, 4).plane;
  Layout l = tutte_layout(t);
  ASSERT_TRUE(audit_layout(t, l).ok());

  // Pull an inner vertex outside the frame: its edges now cross others.
  Layout moved = l;
  auto outer = t.face(t.outer()).vertices();
  Vertex inner = 0;
  while (std::find(outer.begin(), outer.end(), inner) != outer.end()) ++inner;
  moved.pos[static_cast<std::size_t>(inner)] = {3.0, 3.0};
  LayoutAudit a = audit_layout(t, moved);
  EXPECT_FALSE(a.ok());
  EXPECT_GT(a.close_pairs + a.flipped_faces, 0u);

  // Two vertices on top of each other.
  Layout stacked = l;
  stacked.pos[1] = stacked.pos[0];
  EXPECT_FALSE(audit_layout(t, stacked).ok());
}

TEST(RenderTest, DeepCompletionsStayClear) {
  // Sparse inputs nest many triangles; uniform weights alone lose them.
  std::size_t fallbacks = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PlaneGraph p = subsample_plane(gen_plane_3tree(60 + static_cast<int>(seed), seed).plane, 0.3, seed);
    Completion c = complete(p);
    ChosenLayout ch = choose_layout(c.output);
    EXPECT_TRUE(ch.audit.ok()) << seed;
    EXPECT_GE(ch.audit.min_clearance, 1e-9);
    fallbacks += ch.stacked;
  }
  EXPECT_GT(fallbacks, 0u);
}

}  // namespace
}  // namespace p3t
