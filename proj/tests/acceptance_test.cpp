// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "p3t/completer.hpp"
#include "p3t/embed.hpp"
#include "p3t/gen.hpp"
#include "p3t/io.hpp"
#include "p3t/ktree.hpp"
#include "p3t/render.hpp"
#include "p3t/tw3.hpp"
#include "test_graphs.hpp"

namespace {

using namespace p3t;
using namespace p3t::testing;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Recomputes every completion invariant from scratch. Returns an empty
// string when all hold, otherwise the first violated one.
std::string invariant_failure(const Completion& c) {
  const int n = c.input.n();
  const Graph& in = c.input.graph();
  const Graph& out = c.output.graph();
  if (out.n() != n) return "vertex count";
  if (out.num_edges() != static_cast<std::size_t>(3 * n - 6)) return "edge count";
  if (c.output.num_faces() != static_cast<std::size_t>(2 * n - 4)) return "face count";
  for (const Face& f : c.output.faces())
    if (!f.is_triangle()) return "non-triangular face";
  for (const Edge& e : in.edges())
    if (!out.has_edge(e.u, e.v)) return "input edge lost";
  for (const Edge& e : c.added)
    if (!out.has_edge(e.u, e.v) || in.has_edge(e.u, e.v)) return "bad added edge";
  if (out.num_edges() != in.num_edges() + c.added.size()) return "added list incomplete";
  if (!verify_pes(out, c.pes, true)) return "pes";
  if (!extends(c.output, c.input, c.added)) return "extension";
  if (c.provenance.size() != c.output.num_faces()) return "provenance size";
  for (const Face& f : c.output.faces())
    for (const Dart& d : f.walks[0])
      if (in.has_edge(d.from, d.to) && c.input.face_of(d) != c.provenance[static_cast<std::size_t>(f.id)])
        return "provenance";
  return {};
}

bool anchor_on_outer(const Completion& c, const Anchor& a) {
  auto vs = c.output.face(c.output.outer()).vertices();
  auto has = [&](Vertex v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
  if (!has(a.u)) return false;
  return !a.is_edge() || (has(a.v) && c.output.graph().has_edge(a.u, a.v));
}

struct Report {
  int failed = 0;
  void line(int id, bool ok, const std::string& title, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " " << title << ": " << detail << std::endl;
    if (!ok) ++failed;
  }
};

// Shared tally of everything the suite completes.
struct Suite {
  CaseCounters counters;
  std::vector<Completion> rendered;
  void take(const Completion& c) {
    counters += c.counters;
    rendered.push_back(c);
  }
};

void criterion_random(Report& rep, Suite& suite) {
  const double keeps[] = {0.3, 0.6, 0.9};
  int bad = 0;
  std::string first;
  auto t0 = Clock::now();
  for (int i = 0; i < 500; ++i) {
    const int n = 3 + i % 98;
    const auto seed = static_cast<std::uint64_t>(1000 + i);
    PlaneGraph p = subsample_plane(gen_plane_3tree(n, seed).plane, keeps[i % 3], seed);
    try {
      Completion c = complete(p);
      std::string why = invariant_failure(c);
      if (!why.empty()) {
        ++bad;
        if (first.empty()) first = "instance " + std::to_string(i) + ": " + why;
      }
      suite.take(c);
    } catch (const Error& e) {
      ++bad;
      if (first.empty()) first = "instance " + std::to_string(i) + ": " + e.what();
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "500 instances, " << bad << " failures, " << t << " s (limit 60 s)";
  if (!first.empty()) d << "; first: " << first;
  rep.line(1, bad == 0 && t < 60.0, "random subsampled plane 3-trees", d.str());
}

void criterion_exhaustive(Report& rep, Suite& suite) {
  const GraphEnumeration all = enum_graphs(7);
  const std::uint64_t total = all.size();
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::uint64_t> mismatches{0}, accepted{0}, planar{0}, bad{0};
  std::mutex mu;
  std::string first;
  CaseCounters counters;
  auto t0 = Clock::now();
  auto work = [&](unsigned w) {
    CaseCounters local;
    for (std::uint64_t mask = w; mask < total; mask += workers) {
      Graph g = graph_from_mask(7, mask);
      const bool reduced = is_partial_3tree(g);
      if (reduced != (treewidth_oracle(g) <= 3)) {
        ++mismatches;
        std::lock_guard lock(mu);
        if (first.empty()) first = "verdict mismatch on mask " + std::to_string(mask);
      }
      if (!reduced) continue;
      ++accepted;
      PlaneGraph p;
      try {
        p = embed_planar(g);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Nonplanar) continue;
        throw;
      }
      ++planar;
      std::string why;
      try {
        Completion c = complete(p);
        why = invariant_failure(c);
        local += c.counters;
      } catch (const Error& e) {
        why = e.what();
      }
      if (!why.empty()) {
        ++bad;
        std::lock_guard lock(mu);
        if (first.empty()) first = "mask " + std::to_string(mask) + ": " + why;
      }
    }
    std::lock_guard lock(mu);
    counters += local;
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
  suite.counters += counters;
  std::ostringstream d;
  d << total << " graphs, " << accepted << " accepted, " << mismatches << " verdict mismatches, " << planar
    << " planar completed, " << bad << " completion failures, " << workers << " threads, " << seconds_since(t0)
    << " s";
  if (!first.empty()) d << "; first: " << first;
  rep.line(2, mismatches == 0 && bad == 0, "all graphs on 7 vertices", d.str());
}

void criterion_idempotent(Report& rep, Suite& suite) {
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + (i * 37) % 198;
    PlaneGraph p = gen_plane_3tree(n, static_cast<std::uint64_t>(5000 + i)).plane;
    try {
      Completion c = complete(p);
      if (!c.added.empty() || serialize(c.output) != serialize(p)) ++bad;
      suite.take(c);
    } catch (const Error&) {
      ++bad;
    }
  }
  rep.line(3, bad == 0, "idempotence on plane 3-trees", "100 trees up to n=200, " + std::to_string(bad) + " changed");
}

void criterion_negative(Report& rep) {
  std::vector<std::string> problems;
  for (auto [name, g] : {std::pair{"octahedron", octahedron()}, std::pair{"pentagonal prism", pentagonal_prism()}}) {
    if (is_partial_3tree(g)) problems.push_back(std::string(name) + " accepted");
    if (treewidth_oracle(g) != 4) problems.push_back(std::string(name) + " oracle != 4");
  }
  for (auto [name, g] : {std::pair{"K5", complete_graph(5)}, std::pair{"K3,3", k33()}}) {
    bool threw = false;
    try {
      embed_planar(g);
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::Nonplanar;
    }
    if (!threw) problems.push_back(std::string(name) + " embedded");
  }
  auto cube = reduce_tw3(cube_graph());
  auto* trace = std::get_if<ReductionTrace>(&cube);
  if (!trace) problems.push_back("cube rejected");
  else if (!trace->uses(Rule::Cube)) problems.push_back("cube accepted without the cube rule");
  std::string detail = "octahedron, prism rejected (tw 4); K5, K3,3 nonplanar; Q3 accepted via cube rule";
  for (const auto& p : problems) detail += "; " + p;
  rep.line(4, problems.empty(), "negative controls", detail);
}

// Degrees of added edges at each vertex of `side`, sorted, when every added
// edge joins `side` to its complement.
std::vector<int> connector_degrees(const EdgeList& added, const VertexSet& side, bool* crossing) {
  std::vector<int> deg;
  for (Vertex v : side)
    deg.push_back(static_cast<int>(
        std::count_if(added.begin(), added.end(), [&](const Edge& e) { return e.u == v || e.v == v; })));
  auto in_side = [&](Vertex v) { return std::find(side.begin(), side.end(), v) != side.end(); };
  for (const Edge& e : added)
    if (in_side(e.u) == in_side(e.v)) *crossing = false;
  std::sort(deg.begin(), deg.end());
  return deg;
}

void criterion_cases(Report& rep, Suite& suite) {
  // Extra random instances biased toward sparse inputs, which exercise the
  // decomposition cases most.
  for (int i = 0; i < 300; ++i) {
    const int n = 5 + i % 40;
    const auto seed = static_cast<std::uint64_t>(9000 + i);
    PlaneGraph p = subsample_plane(gen_plane_3tree(n, seed).plane, 0.3 + 0.2 * (i % 3), seed);
    suite.take(complete(p));
  }
  const CaseCounters& k = suite.counters;
  std::vector<std::pair<std::string, std::uint64_t>> counts{{"disconnected", k.disconnected},
                                                            {"articulation", k.articulation},
                                                            {"two-cut with edge", k.two_cut_with_edge},
                                                            {"two-cut without edge", k.two_cut_without_edge},
                                                            {"triconnected", k.triconnected}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [name, count] : counts) {
    d << name << " " << count << ", ";
    ok = ok && count >= 50;
  }

  bool exemplars = true;
  {
    Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    Completion c = complete(embed_planar(g));
    bool crossing = true;
    auto a = connector_degrees(c.added, {0, 1, 2}, &crossing);
    auto b = connector_degrees(c.added, {3, 4, 5}, &crossing);
    bool ex = c.added.size() == 6 && crossing && a == std::vector<int>{1, 2, 3} && b == a &&
              invariant_failure(c).empty();
    d << "two triangles " << (ex ? "ok" : "bad") << ", ";
    exemplars = exemplars && ex;
  }
  {
    Completion c = complete(bowtie_plane());
    bool crossing = true;
    auto a = connector_degrees(c.added, {1, 2}, &crossing);
    auto b = connector_degrees(c.added, {3, 4}, &crossing);
    bool ex = c.added.size() == 3 && crossing && a == std::vector<int>{1, 2} && b == a && invariant_failure(c).empty();
    d << "bowtie " << (ex ? "ok" : "bad") << ", ";
    exemplars = exemplars && ex;
  }
  {
    Graph g = complete_graph(4);
    g.remove_edge(2, 3);
    Completion c = complete(embed_planar(g));
    bool ex = c.added == EdgeList{{2, 3}} && invariant_failure(c).empty();
    d << "K4 minus edge " << (ex ? "ok" : "bad");
    exemplars = exemplars && ex;
  }
  rep.line(5, ok && exemplars, "case coverage (each >= 50) and exemplars", d.str());
}

void criterion_anchor(Report& rep, Suite& suite) {
  int bad = 0, edges = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + i % 50;
    const auto seed = static_cast<std::uint64_t>(20000 + i);
    PlaneGraph p = subsample_plane(gen_plane_3tree(n, seed).plane, 0.5, seed);
    // Anchors must lie on the input's outer face.
    std::vector<Dart> outer_darts;
    std::vector<Vertex> outer_vertices;
    for (const auto& walk : p.face(p.outer()).walks) {
      for (const Dart& d : walk) outer_darts.push_back(d);
      for (const Dart& d : walk) outer_vertices.push_back(d.from);
    }
    for (Vertex v = 0; v < p.n(); ++v)
      if (p.graph().degree(v) == 0 && p.face_of_isolated(v) == p.outer()) outer_vertices.push_back(v);
    Rng rng(seed);
    Anchor a;
    if (i % 2 == 1 && !outer_darts.empty()) {
      const Dart& d = outer_darts[rng.below(outer_darts.size())];
      a = Anchor::edge(d.from, d.to);
      ++edges;
    } else {
      a = Anchor::vertex(outer_vertices[rng.below(outer_vertices.size())]);
    }
    try {
      Completion c = complete(p, a);
      if (!anchor_on_outer(c, a) || !invariant_failure(c).empty()) ++bad;
      suite.take(c);
    } catch (const Error&) {
      ++bad;
    }
  }
  rep.line(6, bad == 0, "anchored completions",
           "100 runs (" + std::to_string(edges) + " edge anchors), " + std::to_string(bad) + " failures");
}

// Brute-force check over all pairs of edges: segments without a shared
// endpoint stay more than tol apart, and segments sharing one do not overlap.
int independent_faults(const PlaneGraph& p, const Layout& l, double tol) {
  struct P {
    double x, y;
  };
  auto at = [&](Vertex v) {
    const Point& q = l.pos[static_cast<std::size_t>(v)];
    return P{q[0], q[1]};
  };
  auto orient = [](P a, P b, P c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
  auto dist = [](P q, P a, P b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((q.x - a.x) * dx + (q.y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(q.x - a.x - t * dx, q.y - a.y - t * dy);
  };
  const EdgeList es = p.graph().edges();
  int faults = 0;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Edge& e = es[i];
      const Edge& f = es[j];
      P a = at(e.u), b = at(e.v), c = at(f.u), d = at(f.v);
      const bool shared = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
      if (!shared) {
        const bool proper = orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
        const double gap = std::min({dist(a, c, d), dist(b, c, d), dist(c, a, b), dist(d, a, b)});
        if (proper || gap <= tol) ++faults;
      } else {
        // Put the shared endpoint at a; the other two ends must not be collinear in the same direction.
        if (e.v == f.u || e.v == f.v) std::swap(a, b);
        if (a.x != c.x || a.y != c.y) std::swap(c, d);
        const double len = std::hypot(b.x - a.x, b.y - a.y) * std::hypot(d.x - c.x, d.y - c.y);
        const double dot = (b.x - a.x) * (d.x - c.x) + (b.y - a.y) * (d.y - c.y);
        if (std::abs(orient(a, b, d)) <= tol * len && dot > 0) ++faults;
      }
    }
  return faults;
}

void criterion_render(Report& rep, const Suite& suite) {
  int bad = 0, stacked = 0;
  double worst = 1e300;
  for (const Completion& c : suite.rendered) {
    if (c.output.n() == 3) continue;
    ChosenLayout ch = choose_layout(c.output);
    // Independent re-audit of the coordinates the SVG is drawn from.
    LayoutAudit a = audit_layout(c.output, ch.layout, 1e-9);
    if (!a.ok() || independent_faults(c.output, ch.layout, 1e-9) > 0) ++bad;
    if (ch.stacked) ++stacked;
    worst = std::min(worst, a.min_clearance);
  }
  std::ostringstream d;
  d << suite.rendered.size() << " completions, " << bad << " with crossings or overlaps at 1e-9, " << stacked
    << " drawn with the stacked layout, min clearance " << worst;
  rep.line(7, bad == 0, "rendering audit", d.str());
}

}  // namespace

int main() {
  Report rep;
  Suite suite;
  criterion_random(rep, suite);
  criterion_exhaustive(rep, suite);
  criterion_idempotent(rep, suite);
  criterion_negative(rep);
  criterion_cases(rep, suite);
  criterion_anchor(rep, suite);
  criterion_render(rep, suite);
  std::cout << (rep.failed == 0 ? "ALL PASS" : std::to_string(rep.failed) + " criteria failed") << std::endl;
  return rep.failed == 0 ? 0 : 1;
}
