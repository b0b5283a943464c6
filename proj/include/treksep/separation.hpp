#pragma once

// Trek separation through vertex cuts.
//
// Every vertex v gets three copies: v' (left layer), v'' (middle layer) and
// v (right layer). Arcs:
//   j' -> i'  and  i -> j     for each directed edge i -> j
//   i'' -> j'' and j'' -> i''  for each undirected edge i -- j
//   i' -> j   and  j' -> i    for each bidirected edge i <-> j
//   v' -> v'' -> v            for each vertex
// plus a super-source feeding a' for a in A and b feeding a super-sink for b
// in B. Source-to-sink paths are treks from A to B read backwards along the
// left path, across the middle, and forwards along the right path. Each copy
// is split in/out with capacity 1, so a minimum cut is a minimum separating
// triple (C_L, C_M, C_R) read off by layer.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treksep/flow.hpp"
#include "treksep/graph.hpp"
#include "treksep/treks.hpp"

namespace treksep {

enum class Layer { Left = 0, Middle = 1, Right = 2 };

struct SeparationTriple {
  VertexSet c_left;
  VertexSet c_mid;
  VertexSet c_right;

  std::size_t size() const { return c_left.size() + c_mid.size() + c_right.size(); }

  /// Directed-graph pair view (C_A, C_B) with the middle folded into the left.
  std::pair<VertexSet, VertexSet> pair_view() const {
    VertexSet ca = c_left;
    ca.insert(c_mid.begin(), c_mid.end());
    return {ca, c_right};
  }

  friend bool operator==(const SeparationTriple&, const SeparationTriple&) = default;
};

inline std::string to_string(const SeparationTriple& c) {
  return "C_L=" + format_set(c.c_left) + " C_M=" + format_set(c.c_mid) + " C_R=" + format_set(c.c_right);
}

struct RankResult {
  std::size_t rank = 0;
  SeparationTriple certificate;
  std::int64_t flow_value = 0;
};

class FlowNetwork {
 public:
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  explicit FlowNetwork(int m) : m_(m), graph_(2 + 6 * m) {}

  int vertex_count() const { return m_; }
  int node_in(VertexId v, Layer l) const { return 2 + 6 * (v - 1) + 2 * static_cast<int>(l); }
  int node_out(VertexId v, Layer l) const { return node_in(v, l) + 1; }

  struct NodeInfo {
    VertexId vertex;
    Layer layer;
    bool out;
  };
  /// Decodes a split node; nullopt for the super-source and super-sink.
  std::optional<NodeInfo> info(int node) const {
    if (node < 2) return std::nullopt;
    int k = node - 2;
    return NodeInfo{k / 6 + 1, static_cast<Layer>((k % 6) / 2), (k % 2) == 1};
  }

  /// "v'", "v''" or "v"; "s"/"t" for the terminals.
  std::string node_name(int node) const {
    auto i = info(node);
    if (!i) return node == kSource ? "s" : "t";
    std::string n = std::to_string(i->vertex);
    if (i->layer == Layer::Left) n += "'";
    if (i->layer == Layer::Middle) n += "''";
    return n + (i->out ? "+" : "-");
  }

  FlowGraph& graph() { return graph_; }
  const FlowGraph& graph() const { return graph_; }

  /// Is there a source-to-sink path avoiding the blocked vertex copies?
  bool connected(const std::vector<std::array<char, 3>>& blocked) const {
    std::vector<char> seen(graph_.node_count(), 0);
    std::vector<int> stack{kSource};
    seen[kSource] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == kSink) return true;
      if (auto i = info(v); i && !i->out && blocked[i->vertex][static_cast<int>(i->layer)]) continue;
      for (const auto& a : graph_.arcs(v))
        if (!a.residual_only && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
    }
    return false;
  }

  bool connected() const { return connected(std::vector<std::array<char, 3>>(m_ + 1, {0, 0, 0})); }

 private:
  int m_;
  FlowGraph graph_;
};

namespace detail {

inline void check_vertices(const MixedGraph& g, const VertexSet& s, const char* what) {
  for (VertexId v : s)
    if (!g.contains(v))
      throw InvalidArgument(std::string(what) + " contains vertex " + std::to_string(v) + " outside [1, " +
                            std::to_string(g.vertex_count()) + "]");
}

}  // namespace detail

/// Builds the layered vertex-split network for treks from A to B. Bidirected
/// edges become direct left-to-right arcs, which is the bidirected
/// subdivision with its latent vertex contracted and left uncuttable.
inline FlowNetwork build_auxiliary_graph(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
  detail::check_vertices(g, A, "A");
  detail::check_vertices(g, B, "B");
  const int m = g.vertex_count();
  const std::int64_t inf = static_cast<std::int64_t>(m) + 1;  // exceeds any flow, which is at most min(#A, #B)
  FlowNetwork net(m);
  auto& fg = net.graph();
  const Layer L = Layer::Left, M = Layer::Middle, R = Layer::Right;
  for (VertexId v = 1; v <= m; ++v) {
    for (Layer l : {L, M, R}) fg.add_arc(net.node_in(v, l), net.node_out(v, l), 1);
    fg.add_arc(net.node_out(v, L), net.node_in(v, M), inf);
    fg.add_arc(net.node_out(v, M), net.node_in(v, R), inf);
  }
  for (const auto& [i, j] : g.directed_edges()) {
    fg.add_arc(net.node_out(i, R), net.node_in(j, R), inf);
    fg.add_arc(net.node_out(j, L), net.node_in(i, L), inf);
  }
  for (const auto& [i, j] : g.undirected_edges()) {
    fg.add_arc(net.node_out(i, M), net.node_in(j, M), inf);
    fg.add_arc(net.node_out(j, M), net.node_in(i, M), inf);
  }
  for (const auto& [i, j] : g.bidirected_edges()) {
    fg.add_arc(net.node_out(i, L), net.node_in(j, R), inf);
    fg.add_arc(net.node_out(j, L), net.node_in(i, R), inf);
  }
  for (VertexId a : A) fg.add_arc(FlowNetwork::kSource, net.node_in(a, L), inf);
  for (VertexId b : B) fg.add_arc(net.node_out(b, R), FlowNetwork::kSink, inf);
  return net;
}

/// Does (C_L, C_M, C_R) block every trek from A to B?
inline bool is_t_separating(const MixedGraph& g, const VertexSet& A, const VertexSet& B,
                            const SeparationTriple& c) {
  detail::check_vertices(g, c.c_left, "C_L");
  detail::check_vertices(g, c.c_mid, "C_M");
  detail::check_vertices(g, c.c_right, "C_R");
  FlowNetwork net = build_auxiliary_graph(g, A, B);
  std::vector<std::array<char, 3>> blocked(g.vertex_count() + 1, {0, 0, 0});
  for (VertexId v : c.c_left) blocked[v][0] = 1;
  for (VertexId v : c.c_mid) blocked[v][1] = 1;
  for (VertexId v : c.c_right) blocked[v][2] = 1;
  return !net.connected(blocked);
}

namespace detail {

struct SolvedNetwork {
  FlowNetwork net;
  std::int64_t flow;
};

inline SolvedNetwork solve(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
  FlowNetwork net = build_auxiliary_graph(g, A, B);
  std::int64_t flow = net.graph().max_flow(FlowNetwork::kSource, FlowNetwork::kSink);
  return {std::move(net), flow};
}

}  // namespace detail

/// Minimum t-separating triple via max-flow / min-cut. The certificate is the
/// cut closest to the source in the residual network.
inline RankResult min_t_separator(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
  auto [net, flow] = detail::solve(g, A, B);
  auto reach = net.graph().residual_reachable(FlowNetwork::kSource);
  RankResult out;
  out.flow_value = flow;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) {
    for (Layer l : {Layer::Left, Layer::Middle, Layer::Right}) {
      if (!reach[net.node_in(v, l)] || reach[net.node_out(v, l)]) continue;
      switch (l) {
        case Layer::Left: out.certificate.c_left.insert(v); break;
        case Layer::Middle: out.certificate.c_mid.insert(v); break;
        case Layer::Right: out.certificate.c_right.insert(v); break;
      }
    }
  }
  out.rank = out.certificate.size();
  return out;
}

/// Generic rank of Σ_{A,B} for the model of g: the minimum t-separator size.
inline std::size_t generic_rank(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
  return min_t_separator(g, A, B).rank;
}

/// A maximum family of vertex-disjoint network paths, decoded as a trek
/// system from A to B with no sided intersection.
inline TrekSystem disjoint_trek_system(const MixedGraph& g, const VertexSet& A, const VertexSet& B) {
  auto [net, flow] = detail::solve(g, A, B);
  FlowGraph& fg = net.graph();
  std::vector<Trek> treks;
  for (std::int64_t unit = 0; unit < flow; ++unit) {
    std::vector<std::pair<VertexId, Layer>> visited;  // one entry per out-node
    int v = FlowNetwork::kSource;
    while (v != FlowNetwork::kSink) {
      // Follow one unit of flow and consume it so later walks skip it.
      auto& arcs = fg.arcs(v);
      auto it = std::find_if(arcs.begin(), arcs.end(), [](const auto& a) { return !a.residual_only && a.flow > 0; });
      if (it == arcs.end()) throw Error("flow decomposition lost its path");
      it->flow -= 1;
      v = it->to;
      if (auto i = net.info(v); i && i->out) visited.emplace_back(i->vertex, i->layer);
    }
    Trek t;
    Path mid;
    for (const auto& [x, l] : visited) {
      if (l == Layer::Left) t.left.push_back(x);
      if (l == Layer::Middle) mid.push_back(x);
      if (l == Layer::Right) t.right.push_back(x);
    }
    std::reverse(t.left.begin(), t.left.end());
    if (mid.empty()) {
      t.middle_kind = MiddleKind::BidirectedEdge;
      t.middle = {t.left.front(), t.right.front()};
    } else {
      t.middle_kind = mid.size() == 1 ? MiddleKind::None : MiddleKind::UndirectedPath;
      t.middle = std::move(mid);
    }
    treks.push_back(std::move(t));
  }
  return TrekSystem(std::move(treks));
}

// ---------------------------------------------------------------------------
// d-separation and conditional independence

namespace detail {

inline void require_dag(const MixedGraph& g, const char* op) {
  if (!g.is_dag()) throw InvalidArgument(std::string(op) + " requires a directed acyclic graph");
}

inline void require_disjoint(const VertexSet& A, const VertexSet& B, const VertexSet& C) {
  auto meets = [](const VertexSet& x, const VertexSet& y) {
    return std::any_of(x.begin(), x.end(), [&](VertexId v) { return y.count(v) > 0; });
  };
  if (meets(A, B) || meets(A, C) || meets(B, C)) throw InvalidArgument("A, B and C must be pairwise disjoint");
}

inline VertexSet set_union(VertexSet x, const VertexSet& y) {
  x.insert(y.begin(), y.end());
  return x;
}

}  // namespace detail

/// Classic d-separation by reachability over (vertex, direction) states.
/// Independent of trek separation.
inline bool d_separates(const MixedGraph& g, const VertexSet& A, const VertexSet& B, const VertexSet& C) {
  detail::require_dag(g, "d-separation");
  detail::check_vertices(g, A, "A");
  detail::check_vertices(g, B, "B");
  detail::check_vertices(g, C, "C");
  detail::require_disjoint(A, B, C);
  const VertexSet conditioned_anc = ancestors(g, C);
  // dir 0: arrived from a child (moving up), dir 1: arrived from a parent (moving down)
  std::vector<std::array<char, 2>> visited(g.vertex_count() + 1, {0, 0});
  std::vector<std::pair<VertexId, int>> stack;
  for (VertexId a : A) stack.emplace_back(a, 0);
  while (!stack.empty()) {
    auto [v, dir] = stack.back();
    stack.pop_back();
    if (visited[v][dir]) continue;
    visited[v][dir] = 1;
    const bool observed = C.count(v) > 0;
    if (!observed && B.count(v)) return false;
    if (dir == 0 && !observed) {
      for (VertexId p : g.parents(v)) stack.emplace_back(p, 0);
      for (VertexId c : g.children(v)) stack.emplace_back(c, 1);
    } else if (dir == 1) {
      if (!observed)
        for (VertexId c : g.children(v)) stack.emplace_back(c, 1);
      if (conditioned_anc.count(v))
        for (VertexId p : g.parents(v)) stack.emplace_back(p, 0);
    }
  }
  return true;
}

/// A partition C = C_A ⊎ C_B with (C_A, C_B) t-separating A∪C from B∪C, if any.
inline std::optional<std::pair<VertexSet, VertexSet>> t_sep_partition(const MixedGraph& g, const VertexSet& A,
                                                                      const VertexSet& B, const VertexSet& C) {
  detail::require_dag(g, "d-separation via t-separation");
  detail::require_disjoint(A, B, C);
  if (C.size() > 20) throw InvalidArgument("conditioning set larger than 20 vertices");
  const std::vector<VertexId> cs(C.begin(), C.end());
  const VertexSet AC = detail::set_union(A, C), BC = detail::set_union(B, C);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << cs.size()); ++mask) {
    SeparationTriple t;
    for (std::size_t k = 0; k < cs.size(); ++k) ((mask >> k) & 1 ? t.c_right : t.c_left).insert(cs[k]);
    if (is_t_separating(g, AC, BC, t)) return std::pair{t.c_left, t.c_right};
  }
  return std::nullopt;
}

inline bool d_sep_via_t_sep(const MixedGraph& g, const VertexSet& A, const VertexSet& B, const VertexSet& C) {
  return t_sep_partition(g, A, B, C).has_value();
}

/// X_A ⊥ X_B | X_C holds on the whole model iff Σ_{A∪C, B∪C} has generic rank #C.
inline bool ci_implied(const MixedGraph& g, const VertexSet& A, const VertexSet& B, const VertexSet& C) {
  detail::require_disjoint(A, B, C);
  return generic_rank(g, detail::set_union(A, C), detail::set_union(B, C)) == C.size();
}

struct ChokePoint {
  VertexId vertex;
  Layer side;  ///< Left or Right
};

/// A single vertex c with ({c},∅) or (∅,{c}) t-separating {i,j} from {k,l},
/// which is exactly when the tetrad σ_ik σ_jl − σ_il σ_jk vanishes on the
/// model. nullopt when the 2×2 block has generic rank 2.
inline std::optional<ChokePoint> vanishing_tetrad(const MixedGraph& g, std::pair<VertexId, VertexId> ij,
                                                  std::pair<VertexId, VertexId> kl) {
  detail::require_dag(g, "vanishing_tetrad");
  const VertexSet A{ij.first, ij.second}, B{kl.first, kl.second};
  RankResult r = min_t_separator(g, A, B);
  if (r.rank >= 2) return std::nullopt;
  // Rank 0: there are no treks at all and any vertex blocks them.
  if (r.rank == 0) return ChokePoint{*A.begin(), Layer::Left};
  auto [ca, cb] = r.certificate.pair_view();
  if (!ca.empty()) return ChokePoint{*ca.begin(), Layer::Left};
  return ChokePoint{*cb.begin(), Layer::Right};
}

}  // namespace treksep
