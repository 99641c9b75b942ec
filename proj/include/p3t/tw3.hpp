#pragma once

// Recognition of partial 3-trees by graph reduction, and spanning 3-tree
// completion built from the reduction trace.
//
// Rules, tried in this priority (lowest vertex id first within a rule):
//   zero-fill  vertex of degree <= 3 whose neighbors already form a clique
//              (reported as islet / twig / series / triangle by degree)
//   series     degree-2 vertex: remove it, join its neighbors
//   triangle   degree-3 vertex with an edge among its neighbors: remove it,
//              complete the neighborhood
//   buddy      two degree-3 vertices with equal neighborhoods: remove both,
//              complete the neighborhood
//   cube       degree-3 vertex v whose neighbors a, b, c have degree 3 and
//              second neighborhoods {y,z}, {x,z}, {x,y}: remove v, a, b, c,
//              add the triangle xyz
// A graph has treewidth <= 3 iff these rules reduce it to the empty graph.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/ktree.hpp"

namespace p3t {

enum class Rule { Islet, Twig, Series, Triangle, Buddy, Cube };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Islet: return "islet";
    case Rule::Twig: return "twig";
    case Rule::Series: return "series";
    case Rule::Triangle: return "triangle";
    case Rule::Buddy: return "buddy";
    case Rule::Cube: return "cube";
  }
  return "?";
}

/// One rule application. `removed` lists vertices in elimination order;
/// `fill` lists every edge the elimination adds to the filled graph,
/// including edges between removed vertices and their neighbors.
struct RuleStep {
  Rule rule = Rule::Islet;
  std::vector<Vertex> removed;
  EdgeList fill;
};

struct ReductionTrace {
  std::vector<RuleStep> steps;

  bool uses(Rule r) const {
    return std::any_of(steps.begin(), steps.end(), [r](const RuleStep& s) { return s.rule == r; });
  }
  std::vector<Vertex> elimination_order() const {
    std::vector<Vertex> out;
    for (const auto& s : steps) out.insert(out.end(), s.removed.begin(), s.removed.end());
    return out;
  }
};

/// Irreducible remainder: the induced graph left when no rule applies.
struct Reject {
  Graph remainder;
  std::vector<Vertex> to_parent;
};

using ReductionResult = std::variant<ReductionTrace, Reject>;

namespace detail {

class Reducer {
 public:
  explicit Reducer(const Graph& g) : n_(g.n()), adj_(static_cast<std::size_t>(g.n())), alive_(static_cast<std::size_t>(g.n()), 1) {
    for (Vertex v = 0; v < n_; ++v) adj_[static_cast<std::size_t>(v)] = g.neighbors(v);
    remaining_ = n_;
  }

  ReductionResult run() {
    ReductionTrace trace;
    while (remaining_ > 0) {
      RuleStep step;
      if (!(try_zero_fill(step) || try_series(step) || try_triangle(step) || try_buddy(step) || try_cube(step)))
        return reject();
      trace.steps.push_back(std::move(step));
    }
    return trace;
  }

 private:
  const std::vector<Vertex>& nb(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int deg(Vertex v) const { return static_cast<int>(nb(v).size()); }
  bool adjacent(Vertex a, Vertex b) const { return std::binary_search(nb(a).begin(), nb(a).end(), b); }
  bool alive(Vertex v) const { return alive_[static_cast<std::size_t>(v)] != 0; }

  void link(Vertex a, Vertex b) {
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b) return;
    na.insert(it, b);
    auto& nbv = adj_[static_cast<std::size_t>(b)];
    nbv.insert(std::lower_bound(nbv.begin(), nbv.end(), a), a);
  }

  // Eliminates v: completes its current neighborhood, records fill, drops v.
  void eliminate(Vertex v, RuleStep& step) {
    std::vector<Vertex> ns = nb(v);
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j)
        if (!adjacent(ns[i], ns[j])) {
          link(ns[i], ns[j]);
          step.fill.emplace_back(ns[i], ns[j]);
        }
    for (Vertex w : ns) {
      auto& nw = adj_[static_cast<std::size_t>(w)];
      nw.erase(std::lower_bound(nw.begin(), nw.end(), v));
    }
    adj_[static_cast<std::size_t>(v)].clear();
    alive_[static_cast<std::size_t>(v)] = 0;
    --remaining_;
    step.removed.push_back(v);
  }

  int missing_edges(const std::vector<Vertex>& ns) const {
    int missing = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j)
        if (!adjacent(ns[i], ns[j])) ++missing;
    return missing;
  }

  bool try_zero_fill(RuleStep& step) {
    for (Vertex v = 0; v < n_; ++v) {
      if (!alive(v) || deg(v) > 3 || missing_edges(nb(v)) > 0) continue;
      static constexpr Rule by_degree[] = {Rule::Islet, Rule::Twig, Rule::Series, Rule::Triangle};
      step.rule = by_degree[deg(v)];
      eliminate(v, step);
      return true;
    }
    return false;
  }

  bool try_series(RuleStep& step) {
    for (Vertex v = 0; v < n_; ++v)
      if (alive(v) && deg(v) == 2) {
        step.rule = Rule::Series;
        eliminate(v, step);
        return true;
      }
    return false;
  }

  bool try_triangle(RuleStep& step) {
    for (Vertex v = 0; v < n_; ++v)
      if (alive(v) && deg(v) == 3 && missing_edges(nb(v)) < 3) {
        step.rule = Rule::Triangle;
        eliminate(v, step);
        return true;
      }
    return false;
  }

  bool try_buddy(RuleStep& step) {
    for (Vertex v = 0; v < n_; ++v) {
      if (!alive(v) || deg(v) != 3) continue;
      for (Vertex w = v + 1; w < n_; ++w)
        if (alive(w) && deg(w) == 3 && nb(w) == nb(v)) {
          step.rule = Rule::Buddy;
          eliminate(v, step);
          eliminate(w, step);
          return true;
        }
    }
    return false;
  }

  bool try_cube(RuleStep& step) {
    for (Vertex v = 0; v < n_; ++v) {
      if (!alive(v) || deg(v) != 3) continue;
      const std::vector<Vertex> hub = nb(v);
      std::vector<std::vector<Vertex>> second;
      bool ok = true;
      for (Vertex a : hub) {
        if (deg(a) != 3) {
          ok = false;
          break;
        }
        std::vector<Vertex> rest;
        for (Vertex w : nb(a))
          if (w != v) rest.push_back(w);
        for (Vertex w : rest)
          if (w == v || std::find(hub.begin(), hub.end(), w) != hub.end()) ok = false;
        second.push_back(rest);
      }
      if (!ok) continue;
      std::vector<Vertex> all;
      for (const auto& s : second) all.insert(all.end(), s.begin(), s.end());
      all = make_vertex_set(all);
      if (all.size() != 3) continue;
      bool pairwise = true;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          int common = 0;
          for (Vertex w : second[static_cast<std::size_t>(i)])
            if (std::find(second[static_cast<std::size_t>(j)].begin(), second[static_cast<std::size_t>(j)].end(), w) !=
                second[static_cast<std::size_t>(j)].end())
              ++common;
          if (common != 1) pairwise = false;
        }
      if (!pairwise) continue;
      step.rule = Rule::Cube;
      for (Vertex a : hub) eliminate(a, step);
      eliminate(v, step);
      return true;
    }
    return false;
  }

  ReductionResult reject() const {
    VertexSet left;
    for (Vertex v = 0; v < n_; ++v)
      if (alive(v)) left.push_back(v);
    Graph g(n_);
    for (Vertex v : left)
      for (Vertex w : nb(v))
        if (v < w) g.add_edge(v, w);
    auto sub = induced_subgraph(g, left);
    return Reject{std::move(sub.graph), std::move(sub.to_parent)};
  }

  int n_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> alive_;
  int remaining_ = 0;
};

}  // namespace detail

/// Reduction to the empty graph (treewidth <= 3) or the irreducible remainder.
inline ReductionResult reduce_tw3(const Graph& g) { return detail::Reducer(g).run(); }

inline bool is_partial_3tree(const Graph& g) { return std::holds_alternative<ReductionTrace>(reduce_tw3(g)); }

/// Abstract 3-tree supergraph on the same vertex set.
struct FillCompletion {
  Graph base;
  EdgeList fill;
  Pes pes;

  Graph completed() const {
    Graph h = base;
    for (const Edge& e : fill) h.add_edge(e.u, e.v);
    return h;
  }
};

/// Spanning 3-tree containing g. The reduction's elimination order, read
/// backwards, is a PES of the filled graph with back-degree <= 3; each
/// vertex is then padded up to a full triangle of its predecessors.
inline FillCompletion three_tree_completion(const Graph& g) {
  const int n = g.n();
  if (n < 3) fail(ErrorKind::TooSmall, "a 3-tree needs at least 3 vertices");
  auto result = reduce_tw3(g);
  if (!std::holds_alternative<ReductionTrace>(result)) fail(ErrorKind::NotPartial3Tree, "graph has treewidth > 3");
  const auto& trace = std::get<ReductionTrace>(result);

  Graph h = g;
  for (const auto& s : trace.steps)
    for (const Edge& e : s.fill) h.add_edge(e.u, e.v);

  std::vector<Vertex> order = trace.elimination_order();
  std::reverse(order.begin(), order.end());
  std::sort(order.begin(), order.begin() + 3);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  h.add_edge(order[0], order[1]);
  h.add_edge(order[0], order[2]);
  h.add_edge(order[1], order[2]);
  auto earlier = [&](Vertex w, int i) { return pos[static_cast<std::size_t>(w)] < i; };
  for (int i = 3; i < n; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    std::vector<Vertex> back;
    for (Vertex w : h.neighbors(v))
      if (earlier(w, i)) back.push_back(w);
    ensure(back.size() <= 3 && is_clique(h, back), "filled graph is not chordal of width 3");
    if (back.empty()) back.push_back(order[0]);
    if (back.size() == 1) {
      for (Vertex w : h.neighbors(back[0]))
        if (earlier(w, i)) {
          back.push_back(w);
          break;
        }
    }
    if (back.size() == 2) {
      for (Vertex w : h.neighbors(back[0]))
        if (earlier(w, i) && w != back[1] && h.has_edge(w, back[1])) {
          back.push_back(w);
          break;
        }
    }
    ensure(back.size() == 3, "no host triangle while padding");
    for (Vertex w : back) h.add_edge(v, w);
  }

  FillCompletion out;
  out.base = g;
  out.pes = Pes{order, 3};
  for (const Edge& e : h.edges())
    if (!g.has_edge(e.u, e.v)) out.fill.push_back(e);
  ensure(verify_pes(h, out.pes, true), "padded completion is not a 3-tree");
  return out;
}

/// Exact treewidth by dynamic programming over vertex subsets:
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
/// are the vertices outside S + v reachable from v through S.
inline int treewidth_oracle(const Graph& g) {
  const int n = g.n();
  if (n > 18) fail(ErrorKind::TooLarge, "treewidth oracle limited to 18 vertices");
  if (n == 0) return -1;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1u << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1u << e.u;
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t without = s & ~(1u << v);
      int prev = tw[without];
      if (prev >= best) continue;
      std::uint32_t reach = 1u << v, grow = reach;
      while (grow) {
        std::uint32_t nbr = 0;
        for (std::uint32_t t = grow; t; t &= t - 1) nbr |= adj[static_cast<std::size_t>(std::countr_zero(t))];
        grow = nbr & without & ~reach;
        reach |= grow;
      }
      std::uint32_t border = 0;
      for (std::uint32_t t = reach; t; t &= t - 1) border |= adj[static_cast<std::size_t>(std::countr_zero(t))];
      border &= ~without & ~(1u << v);
      best = std::min(best, std::max(prev, std::popcount(border)));
    }
    tw[s] = static_cast<std::int8_t>(best);
  }
  return tw[full];
}

}  // namespace p3t
