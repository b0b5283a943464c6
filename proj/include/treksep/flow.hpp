#pragma once

// Small integer max-flow (Edmonds-Karp). Arcs are scanned in insertion order,
// so the flow and the residual cut it leaves are deterministic.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace treksep {

class FlowGraph {
 public:
  struct Arc {
    int to;
    int rev;  // index of the paired arc in adj[to]
    std::int64_t cap;
    std::int64_t flow = 0;
    bool residual_only;  // the reverse half of an added arc
    std::int64_t residual() const { return cap - flow; }
  };

  explicit FlowGraph(int nodes = 0) : adj_(nodes) {}

  int add_node() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }
  int node_count() const { return static_cast<int>(adj_.size()); }

  void add_arc(int from, int to, std::int64_t cap) {
    adj_[from].push_back(Arc{to, static_cast<int>(adj_[to].size()), cap, 0, false});
    adj_[to].push_back(Arc{from, static_cast<int>(adj_[from].size()) - 1, 0, 0, true});
  }

  const std::vector<Arc>& arcs(int node) const { return adj_[node]; }
  std::vector<Arc>& arcs(int node) { return adj_[node]; }

  std::int64_t max_flow(int source, int sink) {
    std::int64_t total = 0;
    std::vector<std::pair<int, int>> parent(adj_.size());  // (node, arc index)
    while (true) {
      std::fill(parent.begin(), parent.end(), std::pair{-1, -1});
      parent[source] = {source, -1};
      std::queue<int> q;
      q.push(source);
      while (!q.empty() && parent[sink].first == -1) {
        int v = q.front();
        q.pop();
        for (int k = 0; k < static_cast<int>(adj_[v].size()); ++k) {
          const Arc& a = adj_[v][k];
          if (a.residual() > 0 && parent[a.to].first == -1) {
            parent[a.to] = {v, k};
            q.push(a.to);
          }
        }
      }
      if (parent[sink].first == -1) break;
      std::int64_t push = std::numeric_limits<std::int64_t>::max();
      for (int v = sink; v != source; v = parent[v].first)
        push = std::min(push, adj_[parent[v].first][parent[v].second].residual());
      for (int v = sink; v != source; v = parent[v].first) {
        Arc& a = adj_[parent[v].first][parent[v].second];
        a.flow += push;
        adj_[v][a.rev].flow -= push;
      }
      total += push;
    }
    return total;
  }

  /// Nodes reachable from `source` through arcs with spare residual capacity.
  std::vector<char> residual_reachable(int source) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[v])
        if (a.residual() > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
    }
    return seen;
  }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace treksep
