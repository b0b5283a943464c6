#pragma once

// Treks: a left directed path into the A-side endpoint, a middle segment
// (nothing, an undirected path, or one bidirected edge) and a right directed
// path into the B-side endpoint. For a DAG the middle is always the single
// top vertex shared by both paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "treksep/graph.hpp"

namespace treksep {

using Path = std::vector<VertexId>;

inline constexpr std::size_t kDefaultCap = 100'000;

enum class MiddleKind { None, UndirectedPath, BidirectedEdge };

struct Trek {
  Path left;  ///< source -> ... -> endpoint in A
  MiddleKind middle_kind = MiddleKind::None;
  /// None: {top}. UndirectedPath: source(left) -- ... -- source(right).
  /// BidirectedEdge: {source(left), source(right)}.
  Path middle;
  Path right;  ///< source -> ... -> endpoint in B

  VertexId left_source() const { return left.front(); }
  VertexId right_source() const { return right.front(); }
  VertexId a_end() const { return left.back(); }
  VertexId b_end() const { return right.back(); }

  /// Vertices a C_M block can hit. A bidirected edge has none.
  std::span<const VertexId> blockable_middle() const {
    if (middle_kind == MiddleKind::BidirectedEdge) return {};
    return middle;
  }

  friend bool operator==(const Trek&, const Trek&) = default;
};

inline std::string format_path(const Path& p, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? sep : "") + std::to_string(p[k]);
  return s;
}

inline std::string to_string(const Trek& t) {
  std::string mid;
  switch (t.middle_kind) {
    case MiddleKind::None: mid = format_path(t.middle, ""); break;
    case MiddleKind::UndirectedPath: mid = format_path(t.middle, "--"); break;
    case MiddleKind::BidirectedEdge: mid = format_path(t.middle, "<->"); break;
  }
  return "L:" + format_path(t.left, "->") + "  M:" + mid + "  R:" + format_path(t.right, "->");
}

/// Canonical order: by (left source, right source), path lengths, then vertex sequences.
inline bool trek_less(const Trek& x, const Trek& y) {
  auto key = [](const Trek& t) {
    return std::tie(t.left.front(), t.right.front());
  };
  if (key(x) != key(y)) return key(x) < key(y);
  if (x.left.size() != y.left.size()) return x.left.size() < y.left.size();
  if (x.right.size() != y.right.size()) return x.right.size() < y.right.size();
  return std::tie(x.left, x.middle_kind, x.middle, x.right) <
         std::tie(y.left, y.middle_kind, y.middle, y.right);
}

/// True when `t` is a trek of `g`: every segment uses edges of the right kind
/// and the segments line up at their sources.
inline bool is_trek_of(const MixedGraph& g, const Trek& t) {
  if (t.left.empty() || t.right.empty() || t.middle.empty()) return false;
  for (const Path* p : {&t.left, &t.right}) {
    for (VertexId v : *p)
      if (!g.contains(v)) return false;
    for (std::size_t k = 1; k < p->size(); ++k)
      if (!g.has_directed((*p)[k - 1], (*p)[k])) return false;
  }
  const VertexId s = t.left_source(), r = t.right_source();
  switch (t.middle_kind) {
    case MiddleKind::None:
      return s == r && t.middle == Path{s};
    case MiddleKind::UndirectedPath:
      if (t.middle.front() != s || t.middle.back() != r || t.middle.size() < 2) return false;
      for (std::size_t k = 1; k < t.middle.size(); ++k)
        if (!g.has_undirected(t.middle[k - 1], t.middle[k])) return false;
      return true;
    case MiddleKind::BidirectedEdge:
      return t.middle == Path{s, r} && g.has_bidirected(s, r);
  }
  return false;
}

/// Each segment self-avoiding, and only the two sources may appear in more than one segment.
inline bool is_simple(const Trek& t) {
  auto self_avoiding = [](const Path& p) {
    Path q = p;
    std::sort(q.begin(), q.end());
    return std::adjacent_find(q.begin(), q.end()) == q.end();
  };
  if (!self_avoiding(t.left) || !self_avoiding(t.middle) || !self_avoiding(t.right)) return false;
  const VertexId s = t.left_source(), r = t.right_source();
  std::map<VertexId, int> segments;
  for (const Path* p : {&t.left, &t.middle, &t.right})
    for (VertexId v : *p) ++segments[v];
  for (const auto& [v, count] : segments)
    if (count > 1 && v != s && v != r) return false;
  return true;
}

/// All directed paths from `from` to `to`, each as a vertex sequence. In a
/// valid graph the directed part is acyclic so these are self-avoiding.
inline std::vector<Path> directed_paths(const MixedGraph& g, VertexId from, VertexId to) {
  std::vector<Path> out;
  Path cur{from};
  std::vector<char> on_path(g.vertex_count() + 1, 0);
  on_path[from] = 1;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (v == to) {
      out.push_back(cur);
      return;
    }
    for (VertexId c : g.children(v)) {
      if (on_path[c]) continue;
      on_path[c] = 1;
      cur.push_back(c);
      self(self, c);
      cur.pop_back();
      on_path[c] = 0;
    }
  };
  dfs(dfs, from);
  return out;
}

/// Self-avoiding paths of one or more undirected edges from `from` to `to`.
inline std::vector<Path> undirected_paths(const MixedGraph& g, VertexId from, VertexId to) {
  std::vector<Path> out;
  if (from == to) return out;
  Path cur{from};
  std::vector<char> on_path(g.vertex_count() + 1, 0);
  on_path[from] = 1;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    for (VertexId n : g.undirected_neighbors(v)) {
      if (on_path[n]) continue;
      cur.push_back(n);
      if (n == to) {
        out.push_back(cur);
      } else {
        on_path[n] = 1;
        self(self, n);
        on_path[n] = 0;
      }
      cur.pop_back();
    }
  };
  dfs(dfs, from);
  return out;
}

namespace detail {

inline std::vector<Trek> enumerate_treks_impl(const MixedGraph& g, VertexId i, VertexId j, std::size_t cap,
                                              bool simple_only) {
  for (VertexId v : {i, j})
    if (!g.contains(v))
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range [1, " +
                            std::to_string(g.vertex_count()) + "]");
  std::map<VertexId, std::vector<Path>> lefts, rights;
  for (VertexId s : ancestors(g, i)) lefts[s] = directed_paths(g, s, i);
  for (VertexId t : ancestors(g, j)) rights[t] = directed_paths(g, t, j);

  std::vector<Trek> out;
  auto emit = [&](const Path& l, MiddleKind kind, const Path& mid, const Path& r) {
    Trek t{l, kind, mid, r};
    if (simple_only && !is_simple(t)) return;
    out.push_back(std::move(t));
    if (out.size() > cap)
      throw CapExceeded("more than " + std::to_string(cap) + " treks between " + std::to_string(i) +
                        " and " + std::to_string(j));
  };
  for (const auto& [s, lpaths] : lefts) {
    for (const auto& [t, rpaths] : rights) {
      std::vector<std::pair<MiddleKind, Path>> middles;
      if (s == t) {
        middles.emplace_back(MiddleKind::None, Path{s});
      } else {
        for (auto& p : undirected_paths(g, s, t)) middles.emplace_back(MiddleKind::UndirectedPath, std::move(p));
        if (g.has_bidirected(s, t)) middles.emplace_back(MiddleKind::BidirectedEdge, Path{s, t});
      }
      for (const auto& [kind, mid] : middles)
        for (const auto& l : lpaths)
          for (const auto& r : rpaths) emit(l, kind, mid, r);
    }
  }
  std::sort(out.begin(), out.end(), trek_less);
  return out;
}

}  // namespace detail

/// Every simple trek between i (left end) and j (right end), in canonical order.
/// Throws CapExceeded once more than `cap` treks are found.
inline std::vector<Trek> enumerate_simple_treks(const MixedGraph& g, VertexId i, VertexId j,
                                                std::size_t cap = kDefaultCap) {
  return detail::enumerate_treks_impl(g, i, j, cap, true);
}

/// Treks between i and j whose segments are each self-avoiding, with no
/// constraint across segments. Without undirected edges this is the whole
/// (finite) trek set; these are exactly the source-to-sink paths of the
/// auxiliary flow network.
inline std::vector<Trek> enumerate_treks(const MixedGraph& g, VertexId i, VertexId j,
                                         std::size_t cap = kDefaultCap) {
  return detail::enumerate_treks_impl(g, i, j, cap, false);
}

// ---------------------------------------------------------------------------
// Monomials

struct ParamSymbol {
  enum class Kind { Phi, Psi, Lambda };
  Kind kind;
  VertexId i;
  VertexId j;
  friend auto operator<=>(const ParamSymbol&, const ParamSymbol&) = default;
};

struct Monomial {
  long long coefficient = 1;
  std::map<ParamSymbol, int> exponents;

  void multiply(ParamSymbol s, int power = 1) { exponents[s] += power; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline std::string to_string(const ParamSymbol& s) {
  const char* name = s.kind == ParamSymbol::Kind::Lambda ? "λ" : s.kind == ParamSymbol::Kind::Phi ? "φ" : "ψ";
  return std::string(name) + "_{" + std::to_string(s.i) + "," + std::to_string(s.j) + "}";
}

inline std::string to_string(const Monomial& m) {
  std::string s;
  if (m.coefficient != 1 || m.exponents.empty()) s = std::to_string(m.coefficient);
  for (const auto& [sym, e] : m.exponents) {
    if (!s.empty()) s += "·";
    s += to_string(sym);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

/// The trek's term in the covariance expansion: the middle's factor (φ of the
/// top, φ of the bidirected pair, or ψ along the undirected edges) times λ
/// along both directed paths.
inline Monomial trek_monomial(const MixedGraph& g, const Trek& t) {
  if (!is_trek_of(g, t)) throw InvalidArgument("not a trek of this graph: " + to_string(t));
  using K = ParamSymbol::Kind;
  Monomial m;
  switch (t.middle_kind) {
    case MiddleKind::None:
      m.multiply({K::Phi, t.middle[0], t.middle[0]});
      break;
    case MiddleKind::BidirectedEdge: {
      auto [a, b] = MixedGraph::normalized(t.middle[0], t.middle[1]);
      m.multiply({K::Phi, a, b});
      break;
    }
    case MiddleKind::UndirectedPath:
      for (std::size_t k = 1; k < t.middle.size(); ++k) {
        auto [a, b] = MixedGraph::normalized(t.middle[k - 1], t.middle[k]);
        m.multiply({K::Psi, a, b});
      }
      break;
  }
  for (const Path* p : {&t.left, &t.right})
    for (std::size_t k = 1; k < p->size(); ++k) m.multiply({K::Lambda, (*p)[k - 1], (*p)[k]});
  return m;
}

// ---------------------------------------------------------------------------
// Trek systems

struct TrekSystem {
  std::vector<Trek> treks;
  std::vector<VertexId> a_endpoints;
  std::vector<VertexId> b_endpoints;

  TrekSystem() = default;
  explicit TrekSystem(std::vector<Trek> ts) : treks(std::move(ts)) {
    for (const auto& t : treks) {
      a_endpoints.push_back(t.a_end());
      b_endpoints.push_back(t.b_end());
    }
  }

  std::size_t size() const { return treks.size(); }

  /// Endpoint lists pairwise distinct on each side.
  bool endpoints_distinct() const {
    auto distinct = [](std::vector<VertexId> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    return distinct(a_endpoints) && distinct(b_endpoints);
  }
};

namespace detail {

inline bool share_vertex(std::span<const VertexId> x, std::span<const VertexId> y) {
  for (VertexId a : x)
    if (std::find(y.begin(), y.end(), a) != y.end()) return true;
  return false;
}

}  // namespace detail

/// True iff two treks share a vertex left-with-left, middle-with-middle or
/// right-with-right. Sources count as part of both their directed path and
/// the middle; a bidirected middle never collides.
inline bool has_sided_intersection(std::span<const Trek> treks) {
  for (std::size_t x = 0; x < treks.size(); ++x)
    for (std::size_t y = x + 1; y < treks.size(); ++y) {
      const Trek& s = treks[x];
      const Trek& t = treks[y];
      if (detail::share_vertex(s.left, t.left) || detail::share_vertex(s.right, t.right) ||
          detail::share_vertex(s.blockable_middle(), t.blockable_middle()))
        return true;
    }
  return false;
}

inline bool has_sided_intersection(const TrekSystem& sys) { return has_sided_intersection(sys.treks); }

namespace detail {

struct TrekMasks {
  std::uint64_t left = 0, middle = 0, right = 0;
  VertexId a = 0, b = 0;
};

inline TrekMasks masks_of(const Trek& t) {
  TrekMasks m;
  for (VertexId v : t.left) m.left |= std::uint64_t{1} << v;
  for (VertexId v : t.blockable_middle()) m.middle |= std::uint64_t{1} << v;
  for (VertexId v : t.right) m.right |= std::uint64_t{1} << v;
  m.a = t.a_end();
  m.b = t.b_end();
  return m;
}

// Brute-force search for `r` pairwise non-crossing treks with distinct
// endpoints. A-endpoints are chosen in increasing order so each system is
// visited once.
class NoncrossingSearch {
 public:
  NoncrossingSearch(const MixedGraph& g, const VertexSet& A, const VertexSet& B, std::size_t cap)
      : cap_(cap), a_list_(A.begin(), A.end()) {
    if (g.vertex_count() > 62) throw CapExceeded("brute-force trek search supports at most 62 vertices");
    std::size_t total = 0;
    for (VertexId a : A) {
      auto& bucket = by_a_[a];
      for (VertexId b : B)
        for (const auto& t : enumerate_simple_treks(g, a, b, cap)) {
          bucket.push_back(masks_of(t));
          originals_[a].push_back(t);
          if (++total > cap) throw CapExceeded("more than " + std::to_string(cap) + " treks in search space");
        }
    }
  }

  std::optional<std::vector<Trek>> find(std::size_t r) {
    nodes_ = 0;
    picked_.clear();
    if (r == 0) return std::vector<Trek>{};
    if (r > a_list_.size()) return std::nullopt;
    if (search(r, 0, TrekMasks{}, 0)) return picked_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t r, std::size_t next_a, const TrekMasks& used, std::uint64_t used_b) {
    if (picked_.size() == r) return true;
    if (++nodes_ > cap_) throw CapExceeded("trek system search exceeded " + std::to_string(cap_) + " nodes");
    for (std::size_t ai = next_a; ai + (r - picked_.size()) <= a_list_.size(); ++ai) {
      VertexId a = a_list_[ai];
      const auto& bucket = by_a_[a];
      for (std::size_t k = 0; k < bucket.size(); ++k) {
        const TrekMasks& t = bucket[k];
        if ((used_b >> t.b) & 1) continue;
        if ((t.left & used.left) || (t.middle & used.middle) || (t.right & used.right)) continue;
        TrekMasks next{used.left | t.left, used.middle | t.middle, used.right | t.right, 0, 0};
        picked_.push_back(originals_[a][k]);
        if (search(r, ai + 1, next, used_b | (std::uint64_t{1} << t.b))) return true;
        picked_.pop_back();
      }
    }
    return false;
  }

  std::size_t cap_;
  std::size_t nodes_ = 0;
  std::vector<VertexId> a_list_;
  std::map<VertexId, std::vector<TrekMasks>> by_a_;
  std::map<VertexId, std::vector<Trek>> originals_;
  std::vector<Trek> picked_;
};

}  // namespace detail

/// Brute force: is there a system of r simple treks joining r distinct
/// vertices of A to r distinct vertices of B with no sided intersection?
inline bool exists_noncrossing_system(const MixedGraph& g, const VertexSet& A, const VertexSet& B,
                                      std::size_t r, std::size_t cap = kDefaultCap) {
  if (r > std::min(A.size(), B.size())) return false;
  detail::NoncrossingSearch search(g, A, B, cap);
  return search.find(r).has_value();
}

/// Largest r for which `exists_noncrossing_system` holds, by the same brute force.
inline std::size_t max_noncrossing_system_size(const MixedGraph& g, const VertexSet& A, const VertexSet& B,
                                               std::size_t cap = kDefaultCap) {
  detail::NoncrossingSearch search(g, A, B, cap);
  std::size_t r = 0;
  while (r < std::min(A.size(), B.size()) && search.find(r + 1)) ++r;
  return r;
}

}  // namespace treksep
