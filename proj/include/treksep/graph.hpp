#pragma once

// Mixed graphs with directed, undirected and bidirected edges.
//
// Vertices are 1-based ids in [1, m]. The vertex set is split into an
// undirected side U and a bidirected side W: undirected edges live inside U,
// bidirected edges inside W, and a directed edge between the sides must point
// from U to W. The directed part has to be acyclic. A MixedGraph can hold
// states that break these rules so that `validate` can describe them.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treksep/error.hpp"

namespace treksep {

using VertexId = int;
using VertexSet = std::set<VertexId>;
/// Ordered for directed edges; normalized to (min, max) for undirected and bidirected ones.
using Edge = std::pair<VertexId, VertexId>;

enum class GraphClass { Dag, Undirected, Mixed };

inline const char* to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Dag: return "dag";
    case GraphClass::Undirected: return "undirected";
    case GraphClass::Mixed: return "mixed";
  }
  return "?";
}

class MixedGraph {
 public:
  MixedGraph() = default;

  /// Edgeless graph on [1, m]; every vertex starts on the W side.
  explicit MixedGraph(int m) : m_(m) {
    if (m < 0) throw InvalidArgument("negative vertex count");
    for (VertexId v = 1; v <= m; ++v) w_.insert(v);
  }

  int vertex_count() const noexcept { return m_; }
  bool contains(VertexId v) const noexcept { return v >= 1 && v <= m_; }

  const VertexSet& u_set() const noexcept { return u_; }
  const VertexSet& w_set() const noexcept { return w_; }
  const std::set<Edge>& directed_edges() const noexcept { return directed_; }
  const std::set<Edge>& undirected_edges() const noexcept { return undirected_; }
  const std::set<Edge>& bidirected_edges() const noexcept { return bidirected_; }

  bool has_directed(VertexId i, VertexId j) const { return directed_.count({i, j}) > 0; }
  bool has_undirected(VertexId i, VertexId j) const { return undirected_.count(normalized(i, j)) > 0; }
  bool has_bidirected(VertexId i, VertexId j) const { return bidirected_.count(normalized(i, j)) > 0; }

  /// Returns false if the edge was already present.
  bool add_directed(VertexId i, VertexId j) {
    check_vertex(i);
    check_vertex(j);
    return directed_.insert({i, j}).second;
  }
  bool add_undirected(VertexId i, VertexId j) {
    check_pair(i, j, "undirected");
    return undirected_.insert(normalized(i, j)).second;
  }
  bool add_bidirected(VertexId i, VertexId j) {
    check_pair(i, j, "bidirected");
    return bidirected_.insert(normalized(i, j)).second;
  }

  /// Replaces the side assignment verbatim. Overlaps and gaps are kept for `validate` to report.
  void set_sides(VertexSet u, VertexSet w) {
    for (VertexId v : u) check_vertex(v);
    for (VertexId v : w) check_vertex(v);
    u_ = std::move(u);
    w_ = std::move(w);
  }

  std::vector<VertexId> parents(VertexId v) const {
    std::vector<VertexId> out;
    for (const auto& [i, j] : directed_)
      if (j == v) out.push_back(i);
    return out;
  }
  std::vector<VertexId> children(VertexId v) const {
    std::vector<VertexId> out;
    for (auto it = directed_.lower_bound({v, 0}); it != directed_.end() && it->first == v; ++it)
      out.push_back(it->second);
    return out;
  }
  std::vector<VertexId> undirected_neighbors(VertexId v) const { return neighbors(undirected_, v); }
  std::vector<VertexId> bidirected_neighbors(VertexId v) const { return neighbors(bidirected_, v); }

  /// Dag when only directed edges are present (the edgeless graph included),
  /// Undirected when only undirected edges are present, Mixed otherwise.
  GraphClass graph_class() const noexcept {
    if (undirected_.empty() && bidirected_.empty()) return GraphClass::Dag;
    if (directed_.empty() && bidirected_.empty()) return GraphClass::Undirected;
    return GraphClass::Mixed;
  }
  bool is_dag() const noexcept { return graph_class() == GraphClass::Dag; }

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

  static Edge normalized(VertexId i, VertexId j) { return i < j ? Edge{i, j} : Edge{j, i}; }

 private:
  void check_vertex(VertexId v) const {
    if (!contains(v))
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range [1, " +
                            std::to_string(m_) + "]");
  }
  void check_pair(VertexId i, VertexId j, const char* kind) const {
    check_vertex(i);
    check_vertex(j);
    if (i == j)
      throw InvalidArgument(std::string(kind) + " self-loop on vertex " + std::to_string(i));
  }
  static std::vector<VertexId> neighbors(const std::set<Edge>& edges, VertexId v) {
    std::vector<VertexId> out;
    for (const auto& [i, j] : edges) {
      if (i == v) out.push_back(j);
      if (j == v) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int m_ = 0;
  VertexSet u_;
  VertexSet w_;
  std::set<Edge> directed_;
  std::set<Edge> undirected_;
  std::set<Edge> bidirected_;
};

inline std::string format_set(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : s) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

/// Vertices u (v included) with a directed path u -> ... -> v.
inline VertexSet ancestors(const MixedGraph& g, VertexId v) {
  VertexSet seen{v};
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (VertexId p : g.parents(x))
      if (seen.insert(p).second) stack.push_back(p);
  }
  return seen;
}

inline VertexSet ancestors(const MixedGraph& g, const VertexSet& vs) {
  VertexSet out;
  for (VertexId v : vs) out.merge(ancestors(g, v));
  return out;
}

/// Vertices reachable from v along directed edges, v included.
inline VertexSet descendants(const MixedGraph& g, VertexId v) {
  VertexSet seen{v};
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (VertexId c : g.children(x))
      if (seen.insert(c).second) stack.push_back(c);
  }
  return seen;
}

namespace detail {

// One directed cycle, rotated to start at its smallest vertex; empty if acyclic.
inline std::vector<VertexId> find_directed_cycle(const MixedGraph& g) {
  const int m = g.vertex_count();
  std::vector<int> color(m + 1, 0);  // 0 new, 1 on stack, 2 done
  std::vector<VertexId> path;
  std::vector<VertexId> cycle;
  std::function<bool(VertexId)> dfs = [&](VertexId v) {
    color[v] = 1;
    path.push_back(v);
    for (VertexId c : g.children(v)) {
      if (color[c] == 1) {
        auto it = std::find(path.begin(), path.end(), c);
        cycle.assign(it, path.end());
        return true;
      }
      if (color[c] == 0 && dfs(c)) return true;
    }
    path.pop_back();
    color[v] = 2;
    return false;
  };
  for (VertexId v = 1; v <= m && cycle.empty(); ++v)
    if (color[v] == 0) dfs(v);
  if (!cycle.empty()) std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace detail

/// Every broken invariant, one human-readable line each; empty means valid.
inline std::vector<std::string> validate(const MixedGraph& g) {
  std::vector<std::string> out;
  const auto& u = g.u_set();
  const auto& w = g.w_set();
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    bool in_u = u.count(v) > 0, in_w = w.count(v) > 0;
    if (in_u && in_w) out.push_back("vertex " + std::to_string(v) + " cannot be in both U and W");
    if (!in_u && !in_w) out.push_back("vertex " + std::to_string(v) + " is in neither U nor W");
  }
  for (const auto& [i, j] : g.undirected_edges())
    if (!u.count(i) || !u.count(j))
      out.push_back("undirected edge " + std::to_string(i) + " -- " + std::to_string(j) +
                    " has an endpoint outside U");
  for (const auto& [i, j] : g.bidirected_edges())
    if (!w.count(i) || !w.count(j))
      out.push_back("bidirected edge " + std::to_string(i) + " <-> " + std::to_string(j) +
                    " has an endpoint outside W");
  for (const auto& [i, j] : g.directed_edges())
    if (w.count(i) && !u.count(i) && u.count(j) && !w.count(j))
      out.push_back("U→W direction violated: edge " + std::to_string(i) + " -> " + std::to_string(j) +
                    " points from W to U");
  auto cycle = detail::find_directed_cycle(g);
  if (!cycle.empty()) {
    std::string s = "directed cycle: ";
    for (std::size_t k = 0; k < cycle.size(); ++k) s += (k ? "," : "") + std::to_string(cycle[k]);
    out.push_back(s);
  }
  return out;
}

/// Kahn's algorithm, always taking the smallest available id.
inline std::vector<VertexId> topological_order(const MixedGraph& g) {
  const int m = g.vertex_count();
  std::vector<int> indegree(m + 1, 0);
  for (const auto& e : g.directed_edges()) ++indegree[e.second];
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 1; v <= m; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<VertexId> order;
  order.reserve(m);
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexId c : g.children(v))
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != m) throw GraphError("directed part contains a cycle");
  return order;
}

/// Replaces each bidirected edge i <-> j (taken in lexicographic order) by a
/// fresh vertex with edges to i and j. New ids are m+1, m+2, ... and sit in W.
inline MixedGraph bidirected_subdivision(const MixedGraph& g) {
  const int m = g.vertex_count();
  MixedGraph out(m + static_cast<int>(g.bidirected_edges().size()));
  for (const auto& [i, j] : g.directed_edges()) out.add_directed(i, j);
  for (const auto& [i, j] : g.undirected_edges()) out.add_undirected(i, j);
  VertexSet w = g.w_set();
  VertexId next = m + 1;
  for (const auto& [i, j] : g.bidirected_edges()) {
    out.add_directed(next, i);
    out.add_directed(next, j);
    w.insert(next++);
  }
  out.set_sides(g.u_set(), std::move(w));
  return out;
}

/// Fills in U/W from edge incidence. Undirected endpoints and `explicit_u`
/// are forced into U, bidirected endpoints and `explicit_w` into W; directed
/// ancestors of U vertices join U; everything else defaults to W. A vertex
/// forced both ways lands in both sets, which `validate` reports.
inline void infer_sides(MixedGraph& g, const VertexSet& explicit_u, const VertexSet& explicit_w) {
  VertexSet forced_u = explicit_u, forced_w = explicit_w;
  for (const auto& [i, j] : g.undirected_edges()) forced_u.insert({i, j});
  for (const auto& [i, j] : g.bidirected_edges()) forced_w.insert({i, j});
  VertexSet u = forced_u;
  for (VertexId a : ancestors(g, forced_u))
    if (!forced_w.count(a)) u.insert(a);
  VertexSet w = forced_w;
  for (VertexId v = 1; v <= g.vertex_count(); ++v)
    if (!u.count(v)) w.insert(v);
  g.set_sides(std::move(u), std::move(w));
}

}  // namespace treksep
