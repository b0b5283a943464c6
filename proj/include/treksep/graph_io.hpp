#pragma once

// Line-based graph file format:
//
//   # comment to end of line
//   v <m>                 vertex count, first non-comment line
//   u <id> [<id> ...]     optional explicit U membership
//   w <id> [<id> ...]     optional explicit W membership
//   e <i> -> <j>          directed edge
//   e <i> -- <j>          undirected edge
//   e <i> <-> <j>         bidirected edge

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treksep/graph.hpp"

namespace treksep {

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline VertexId parse_id(const std::string& tok, int m, std::size_t line) {
  VertexId v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a vertex id, got '" + tok + "'");
  if (v < 1 || v > m)
    throw ParseError(line, "vertex id " + tok + " out of range [1, " + std::to_string(m) + "]");
  return v;
}

}  // namespace detail

/// Parses the file format without enforcing graph invariants; sides are
/// inferred with `infer_sides`. Syntax errors, out-of-range ids and repeated
/// edges of the same kind throw ParseError.
inline MixedGraph parse_graph_unchecked(std::string_view text) {
  MixedGraph g;
  bool have_count = false;
  VertexSet explicit_u, explicit_w;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::tokenize(line);
    if (tok.empty()) continue;

    if (!have_count) {
      if (tok[0] != "v") throw ParseError(line_no, "first directive must be 'v <m>'");
      if (tok.size() != 2) throw ParseError(line_no, "'v' takes exactly one argument");
      int m = 0;
      auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), m);
      if (ec != std::errc() || ptr != tok[1].data() + tok[1].size() || m < 1)
        throw ParseError(line_no, "vertex count must be a positive integer, got '" + tok[1] + "'");
      g = MixedGraph(m);
      have_count = true;
      continue;
    }

    const int m = g.vertex_count();
    if (tok[0] == "v") throw ParseError(line_no, "vertex count declared twice");
    if (tok[0] == "u" || tok[0] == "w") {
      if (tok.size() < 2) throw ParseError(line_no, "'" + tok[0] + "' needs at least one vertex id");
      auto& target = tok[0] == "u" ? explicit_u : explicit_w;
      for (std::size_t k = 1; k < tok.size(); ++k) target.insert(detail::parse_id(tok[k], m, line_no));
      continue;
    }
    if (tok[0] != "e") throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
    if (tok.size() != 4) throw ParseError(line_no, "edge lines have the form 'e <i> <op> <j>'");
    VertexId i = detail::parse_id(tok[1], m, line_no);
    VertexId j = detail::parse_id(tok[3], m, line_no);
    const std::string& op = tok[2];
    bool fresh;
    if (op == "->") {
      fresh = g.add_directed(i, j);
    } else if (op == "--" || op == "<->") {
      if (i == j) throw ParseError(line_no, "self-loop " + tok[1] + " " + op + " " + tok[3]);
      fresh = op == "--" ? g.add_undirected(i, j) : g.add_bidirected(i, j);
    } else {
      throw ParseError(line_no, "unknown edge operator '" + op + "'");
    }
    if (!fresh) throw ParseError(line_no, "duplicate edge " + tok[1] + " " + op + " " + tok[3]);
  }
  if (!have_count) throw ParseError(0, "missing 'v <m>' line");
  infer_sides(g, explicit_u, explicit_w);
  return g;
}

/// Parses and validates; any invariant violation throws GraphError listing all of them.
inline MixedGraph parse_graph(std::string_view text) {
  MixedGraph g = parse_graph_unchecked(text);
  auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v;
    throw GraphError(msg);
  }
  return g;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes `g` in the file format with explicit sides, so parsing gives back an equal graph.
inline std::string serialize(const MixedGraph& g) {
  std::ostringstream out;
  out << "v " << g.vertex_count() << '\n';
  auto side = [&](char tag, const VertexSet& s) {
    if (s.empty()) return;
    out << tag;
    for (VertexId v : s) out << ' ' << v;
    out << '\n';
  };
  side('u', g.u_set());
  side('w', g.w_set());
  for (const auto& [i, j] : g.directed_edges()) out << "e " << i << " -> " << j << '\n';
  for (const auto& [i, j] : g.undirected_edges()) out << "e " << i << " -- " << j << '\n';
  for (const auto& [i, j] : g.bidirected_edges()) out << "e " << i << " <-> " << j << '\n';
  return out.str();
}

}  // namespace treksep
