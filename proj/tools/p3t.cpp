// Command-line front end. Exit codes: 0 success, 1 failed claim or internal
// error, 2 graph is not a partial 3-tree, 3 unreadable or invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "p3t/completer.hpp"
#include "p3t/embed.hpp"
#include "p3t/gen.hpp"
#include "p3t/io.hpp"
#include "p3t/ktree.hpp"
#include "p3t/render.hpp"
#include "p3t/tw3.hpp"

namespace {

using namespace p3t;

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotPartial3Tree: return 2;
    case ErrorKind::Internal:
    case ErrorKind::InternalK33: return 1;
    default: return 3;
  }
}

Graph read_graph(const std::string& path) {
  std::string text = read_file(path);
  std::istringstream ss(text);
  std::string first;
  ss >> first;
  return first == "plane-graph" ? parse_plane_graph(text).graph() : parse_edge_list(text);
}

std::vector<Vertex> parse_list(const std::string& text) {
  std::vector<Vertex> out;
  std::string norm = text;
  for (char& ch : norm)
    if (ch == ',') ch = ' ';
  std::istringstream ss(norm);
  for (long v; ss >> v;) out.push_back(static_cast<Vertex>(v));
  if (!ss.eof()) fail(ErrorKind::Parse, "malformed vertex list '" + text + "'");
  return out;
}

std::uint64_t seed_or_env(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("P3T_SEED")) return std::stoull(env);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plane partial 3-tree completion toolkit"};
  app.require_subcommand(1);

  // complete
  auto* complete_cmd = app.add_subcommand("complete", "Augment a drawing to a plane 3-tree extending it");
  std::string in_file, out_file, report_file, svg_file;
  std::optional<Vertex> anchor_vertex;
  std::vector<Vertex> anchor_edge;
  complete_cmd->add_option("input", in_file, "Drawing (native format) or edge list")->required();
  complete_cmd->add_option("-o,--output", out_file, "Completed drawing");
  complete_cmd->add_option("-r,--report", report_file, "JSON report");
  complete_cmd->add_option("--svg", svg_file, "SVG of the completion, added edges dashed");
  auto* av = complete_cmd->add_option("--anchor-vertex", anchor_vertex, "Vertex to keep on the outer triangle");
  complete_cmd->add_option("--anchor-edge", anchor_edge, "Edge to keep on the outer triangle")
      ->expected(2)
      ->excludes(av);

  // check
  auto* check_cmd = app.add_subcommand("check", "Verify claims about a drawing");
  std::string check_file, extends_file, pes_text, pes_report;
  bool claim_stacked = false, claim_triangulation = false, claim_partial = false;
  check_cmd->add_option("input", check_file, "Drawing to check")->required();
  check_cmd->add_flag("--stacked-3tree", claim_stacked, "Drawing is a plane 3-tree");
  check_cmd->add_flag("--triangulation", claim_triangulation, "All faces are triangles");
  check_cmd->add_flag("--partial-3tree", claim_partial, "Graph has treewidth at most 3");
  check_cmd->add_option("--extends", extends_file, "Drawing restricts to this smaller drawing");
  check_cmd->add_option("--pes", pes_text, "Vertex order (comma or space separated) is a strict 3-tree order");
  check_cmd->add_option("--pes-from", pes_report, "Take the order to check from a completion report");

  // recognize
  auto* recognize_cmd = app.add_subcommand("recognize", "Decide treewidth <= 3 by reduction rules");
  std::string recognize_file;
  recognize_cmd->add_option("input", recognize_file, "Drawing or edge list")->required();

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Random plane 3-tree, optionally thinned");
  int gen_n = 10;
  std::optional<std::uint64_t> gen_seed;
  double gen_keep = 1.0;
  std::string gen_out;
  generate_cmd->add_option("-n,--vertices", gen_n, "Vertex count (>= 3)");
  generate_cmd->add_option("-s,--seed", gen_seed, "Seed (default: P3T_SEED or 0)");
  generate_cmd->add_option("-k,--keep", gen_keep, "Probability of keeping each edge")->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("-o,--output", gen_out, "Output file (default: standard output)");

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG of a plane triangulation");
  std::string render_file, render_base, render_out;
  render_cmd->add_option("input", render_file, "Triangulated drawing")->required();
  render_cmd->add_option("--base", render_base, "Original drawing; edges missing from it are dashed");
  render_cmd->add_option("-o,--output", render_out, "SVG file (default: standard output)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact treewidth by dynamic programming (n <= 18)");
  std::string oracle_file;
  oracle_cmd->add_option("input", oracle_file, "Drawing or edge list")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*complete_cmd) {
      PlaneGraph p = parse_any(read_file(in_file));
      std::optional<Anchor> anchor;
      if (anchor_vertex) anchor = Anchor::vertex(*anchor_vertex);
      if (anchor_edge.size() == 2) anchor = Anchor::edge(anchor_edge[0], anchor_edge[1]);
      Completion c = complete(p, anchor);
      nlohmann::json report = completion_report(c, anchor);
      if (!out_file.empty()) {
        write_file(out_file, serialize(c.output));
      } else {
        std::cout << serialize(c.output);
      }
      if (!report_file.empty()) write_file(report_file, report.dump(2) + "\n");
      if (!svg_file.empty()) write_file(svg_file, render_svg(c.output, c.added));
      std::cerr << "added " << c.added.size() << " edges; checks " << (report["all_pass"].get<bool>() ? "PASS" : "FAIL")
                << "\n";
      return report["all_pass"].get<bool>() ? 0 : 1;
    }

    if (*check_cmd) {
      PlaneGraph p = parse_any(read_file(check_file));
      std::vector<std::pair<std::string, bool>> claims;
      if (claim_stacked) claims.emplace_back("stacked-3tree", is_stacked_plane_3tree(p).has_value());
      if (claim_triangulation) claims.emplace_back("triangulation", is_triangulation(p));
      if (claim_partial) claims.emplace_back("partial-3tree", is_partial_3tree(p.graph()));
      if (!extends_file.empty()) {
        PlaneGraph small = parse_any(read_file(extends_file));
        bool ok = small.n() == p.n();
        if (ok) {
          EdgeList added;
          for (const Edge& e : p.graph().edges())
            if (!small.graph().has_edge(e.u, e.v)) added.push_back(e);
          ok = extends(p, small, added);
        }
        claims.emplace_back("extends", ok);
      }
      std::vector<Vertex> order;
      bool want_pes = false;
      if (!pes_text.empty()) {
        order = parse_list(pes_text);
        want_pes = true;
      } else if (!pes_report.empty()) {
        auto j = nlohmann::json::parse(read_file(pes_report), nullptr, false);
        if (j.is_discarded() || !j.contains("pes")) fail(ErrorKind::Parse, "report has no 'pes' field");
        order = j["pes"].get<std::vector<Vertex>>();
        want_pes = true;
      }
      if (want_pes) {
        bool ok = false;
        try {
          ok = verify_pes(p.graph(), Pes{order, 3}, true);
        } catch (const Error&) {
          ok = false;
        }
        claims.emplace_back("pes", ok);
      }
      if (claims.empty()) {
        std::cerr << "no claims requested\n";
        return 3;
      }
      bool all = true;
      for (const auto& [name, ok] : claims) {
        std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
        all = all && ok;
      }
      return all ? 0 : 1;
    }

    if (*recognize_cmd) {
      Graph g = read_graph(recognize_file);
      auto result = reduce_tw3(g);
      if (auto* trace = std::get_if<ReductionTrace>(&result)) {
        std::map<std::string, int> uses;
        for (const RuleStep& s : trace->steps) ++uses[rule_name(s.rule)];
        std::cout << "treewidth <= 3: yes\n";
        for (const auto& [rule, count] : uses) std::cout << "  " << rule << " " << count << "\n";
        return 0;
      }
      const Reject& r = std::get<Reject>(result);
      std::cout << "treewidth <= 3: no (irreducible remainder on " << r.remainder.n() << " vertices)\n";
      return 2;
    }

    if (*generate_cmd) {
      const std::uint64_t seed = seed_or_env(gen_seed);
      PlaneGraph p = gen_plane_3tree(gen_n, seed).plane;
      if (gen_keep < 1.0) p = subsample_plane(p, gen_keep, seed);
      if (gen_out.empty()) {
        std::cout << serialize(p);
      } else {
        write_file(gen_out, serialize(p));
      }
      return 0;
    }

    if (*render_cmd) {
      PlaneGraph p = parse_any(read_file(render_file));
      EdgeList dashed;
      if (!render_base.empty()) {
        Graph base = read_graph(render_base);
        for (const Edge& e : p.graph().edges())
          if (e.v >= base.n() || !base.has_edge(e.u, e.v)) dashed.push_back(e);
      }
      std::string svg = render_svg(p, dashed);
      if (render_out.empty()) {
        std::cout << svg;
      } else {
        write_file(render_out, svg);
      }
      return 0;
    }

    if (*oracle_cmd) {
      Graph g = read_graph(oracle_file);
      std::cout << "treewidth " << treewidth_oracle(g) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
