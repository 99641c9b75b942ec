#pragma once

// Text formats.
//
// Native drawing file (canonical form, one item per line):
//
//   plane-graph 1
//   n <vertices>
//   edges <m>
//   <u> <v>                 m lines, u < v, sorted
//   rotation
//   <v>: <w> <w> ...        n lines, counterclockwise, starting at the smallest neighbor
//   groups <k>
//   <ref> <ref> ...         k lines, one per face bounded by several walks
//   outer <ref>
//   end
//
// A ref names a walk: "d <u> <v>" for the face walk through dart u->v, or
// "i <v>" for an isolated vertex. Blank lines and lines starting with '#'
// are skipped when parsing.
//
// Edge list: "<u> <v>" per line, optionally a line "n <vertices>" for
// trailing isolated vertices; embedded with embed_planar.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p3t/completer.hpp"
#include "p3t/embed.hpp"
#include "p3t/error.hpp"
#include "p3t/graph.hpp"
#include "p3t/plane.hpp"

namespace p3t {

namespace detail {

inline std::string ref_text(const WalkRef& r) {
  return r.is_isolated() ? "i " + std::to_string(r.v) : "d " + std::to_string(r.v) + " " + std::to_string(r.to);
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next meaningful line split into tokens; nullopt at end of input.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      return tokens;
    }
    return std::nullopt;
  }

  std::vector<std::string> expect(const char* what) {
    auto t = next();
    if (!t) error(std::string("unexpected end of input, wanted ") + what);
    return *t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, "line " + std::to_string(line_no_) + ": " + msg);
  }

  long number(const std::string& tok) const {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      error("expected a number, got '" + tok + "'");
    }
    if (used != tok.size()) error("expected a number, got '" + tok + "'");
    return v;
  }

  Vertex vertex(const std::string& tok, int n) const {
    long v = number(tok);
    if (v < 0 || v >= n) error("vertex " + tok + " out of range");
    return static_cast<Vertex>(v);
  }

  std::vector<WalkRef> refs(const std::vector<std::string>& t, std::size_t from, int n) const {
    std::vector<WalkRef> out;
    std::size_t i = from;
    while (i < t.size()) {
      if (t[i] == "i" && i + 1 < t.size()) {
        out.push_back(WalkRef::isolated(vertex(t[i + 1], n)));
        i += 2;
      } else if (t[i] == "d" && i + 2 < t.size()) {
        out.push_back(WalkRef::dart(vertex(t[i + 1], n), vertex(t[i + 2], n)));
        i += 3;
      } else {
        error("malformed walk reference");
      }
    }
    return out;
  }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

}  // namespace detail

inline std::string serialize(const PlaneGraph& p) {
  std::ostringstream out;
  out << "plane-graph 1\n";
  out << "n " << p.n() << "\n";
  const EdgeList edges = p.graph().edges();
  out << "edges " << edges.size() << "\n";
  for (const Edge& e : edges) out << e.u << " " << e.v << "\n";
  out << "rotation\n";
  for (Vertex v = 0; v < p.n(); ++v) {
    out << v << ":";
    for (Vertex w : p.rotation(v)) out << " " << w;
    out << "\n";
  }
  const auto groups = p.groups();
  out << "groups " << groups.size() << "\n";
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << detail::ref_text(g[i]);
    out << "\n";
  }
  if (p.n() > 0) out << "outer " << detail::ref_text(p.face_ref(p.outer())) << "\n";
  out << "end\n";
  return out.str();
}

inline PlaneGraph parse_plane_graph(const std::string& text) {
  detail::LineReader r(text);
  auto t = r.expect("header");
  if (t.size() != 2 || t[0] != "plane-graph" || t[1] != "1") r.error("expected 'plane-graph 1'");
  t = r.expect("vertex count");
  if (t.size() != 2 || t[0] != "n") r.error("expected 'n <count>'");
  long nl = r.number(t[1]);
  if (nl < 0 || nl > 1000000) r.error("vertex count out of range");
  const int n = static_cast<int>(nl);

  t = r.expect("edge count");
  if (t.size() != 2 || t[0] != "edges") r.error("expected 'edges <count>'");
  long m = r.number(t[1]);
  if (m < 0) r.error("negative edge count");
  Graph g(n);
  for (long i = 0; i < m; ++i) {
    t = r.expect("edge");
    if (t.size() != 2) r.error("expected '<u> <v>'");
    Vertex a = r.vertex(t[0], n), b = r.vertex(t[1], n);
    if (a == b) r.error("loop edge");
    if (!g.add_edge(a, b)) r.error("duplicate edge");
  }

  t = r.expect("rotation");
  if (t.size() != 1 || t[0] != "rotation") r.error("expected 'rotation'");
  Rotation rot(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    t = r.expect("rotation line");
    if (t.empty() || t[0].empty() || t[0].back() != ':') r.error("expected '<v>: <neighbors>'");
    Vertex v = r.vertex(t[0].substr(0, t[0].size() - 1), n);
    if (seen[static_cast<std::size_t>(v)]) r.error("rotation of vertex " + std::to_string(v) + " given twice");
    seen[static_cast<std::size_t>(v)] = 1;
    for (std::size_t j = 1; j < t.size(); ++j) rot[static_cast<std::size_t>(v)].push_back(r.vertex(t[j], n));
  }

  t = r.expect("groups");
  if (t.size() != 2 || t[0] != "groups") r.error("expected 'groups <count>'");
  long k = r.number(t[1]);
  if (k < 0) r.error("negative group count");
  std::vector<std::vector<WalkRef>> groups;
  for (long i = 0; i < k; ++i) groups.push_back(r.refs(r.expect("group"), 0, n));

  WalkRef outer = WalkRef::isolated(0);
  t = r.expect("outer or end");
  if (!t.empty() && t[0] == "outer") {
    auto refs = r.refs(t, 1, n);
    if (refs.size() != 1) r.error("expected exactly one outer reference");
    outer = refs.front();
    t = r.expect("end");
  } else if (n > 0) {
    r.error("missing 'outer' line");
  }
  if (t.size() != 1 || t[0] != "end") r.error("expected 'end'");
  if (r.next()) r.error("content after 'end'");
  return PlaneGraph(std::move(g), std::move(rot), groups, outer);
}

inline Graph parse_edge_list(const std::string& text) {
  detail::LineReader r(text);
  long n = 0;
  std::vector<std::pair<long, long>> pairs;
  while (auto t = r.next()) {
    if (t->size() == 2 && (*t)[0] == "n") {
      n = std::max(n, r.number((*t)[1]));
      continue;
    }
    if (t->size() != 2) r.error("expected '<u> <v>'");
    long a = r.number((*t)[0]), b = r.number((*t)[1]);
    if (a < 0 || b < 0) r.error("negative vertex");
    if (a == b) r.error("loop edge");
    pairs.emplace_back(a, b);
    n = std::max(n, std::max(a, b) + 1);
  }
  if (n > 1000000) r.error("vertex count out of range");
  Graph g(static_cast<int>(n));
  for (auto [a, b] : pairs) g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  return g;
}

/// Native format if the text starts with the header, else an edge list.
inline PlaneGraph parse_any(const std::string& text) {
  detail::LineReader r(text);
  auto t = r.next();
  if (t && !t->empty() && (*t)[0] == "plane-graph") return parse_plane_graph(text);
  return embed_planar(parse_edge_list(text));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a sibling temporary file, then renames over the target.
inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Internal, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) fail(ErrorKind::Internal, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline nlohmann::json completion_report(const Completion& c, const std::optional<Anchor>& anchor = std::nullopt) {
  using nlohmann::json;
  CompletionChecks checks = verify_completion(c, anchor);
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  json j;
  j["n"] = c.input.n();
  j["input_edges"] = c.input.graph().num_edges();
  j["output_edges"] = c.output.graph().num_edges();
  json added = json::array();
  for (const Edge& e : c.added) added.push_back({e.u, e.v});
  j["added"] = added;
  j["pes"] = c.pes.order;
  j["checks"] = {{"spanning", verdict(checks.spanning)},     {"edge_count", verdict(checks.edge_count)},
                 {"triangular", verdict(checks.triangular)}, {"pes", verdict(checks.pes)},
                 {"extends", verdict(checks.extends)},       {"provenance", verdict(checks.provenance)}};
  if (anchor) {
    j["checks"]["anchor"] = verdict(checks.anchor);
    j["anchor"] = anchor->is_edge() ? json{anchor->u, anchor->v} : json{anchor->u};
  }
  j["all_pass"] = checks.all();
  json faces = json::array();
  for (const Face& f : c.output.faces()) {
    json walk = json::array();
    for (const Dart& d : f.walks.front()) walk.push_back(d.from);
    faces.push_back({{"face", f.id}, {"walk", walk}, {"input_face", c.provenance[static_cast<std::size_t>(f.id)]}});
  }
  j["provenance"] = faces;
  j["outer_face"] = c.output.outer();
  j["input_outer_face"] = c.input.outer();
  j["cases"] = {{"base", c.counters.base},
                {"disconnected", c.counters.disconnected},
                {"articulation", c.counters.articulation},
                {"two_cut_with_edge", c.counters.two_cut_with_edge},
                {"two_cut_without_edge", c.counters.two_cut_without_edge},
                {"triconnected", c.counters.triconnected}};
  return j;
}

}  // namespace p3t
