#pragma once

// Exact algebraic side: sample integer parameters, build
//   Σ = Λ^{-T} (K^{-1} ⊕ Φ) Λ^{-1}
// over the rationals, and evaluate the trek rule, the path-system expansion
// of minors of Λ^{-1} and the Cauchy–Binet expansion of minors of Σ. These
// are the reference values the combinatorial answers are checked against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "treksep/graph.hpp"
#include "treksep/rational.hpp"
#include "treksep/treks.hpp"

namespace treksep {

inline constexpr std::int64_t kDefaultScale = 1'000'000;
inline constexpr int kDefaultTrials = 5;

/// Parameters for one point of the model. `phi` and `k` are stored as full
/// m×m matrices (0-based) that are zero outside their W×W / U×U blocks.
struct ParamAssignment {
  std::map<Edge, Rational> lambda;
  RationalMatrix phi;
  RationalMatrix k;
};

/// Deterministic integer parameters: λ and the off-diagonal entries of Φ and
/// K are nonzero draws from [-scale, scale]; each diagonal entry is
/// 1 + (row sum of |off-diagonal|) + a draw from [0, scale], which keeps Φ
/// and K strictly diagonally dominant and therefore positive definite.
inline ParamAssignment sample_parameters(const MixedGraph& g, std::uint64_t seed,
                                         std::int64_t scale = kDefaultScale) {
  if (scale < 1) throw InvalidArgument("scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-scale, scale), extra(0, scale);
  auto nonzero = [&] {
    std::int64_t x = 0;
    while (x == 0) x = entry(rng);
    return x;
  };
  const std::size_t m = g.vertex_count();
  ParamAssignment p{{}, RationalMatrix(m, m), RationalMatrix(m, m)};
  for (const auto& e : g.directed_edges()) p.lambda[e] = nonzero();
  for (const auto& [i, j] : g.bidirected_edges()) p.phi(i - 1, j - 1) = p.phi(j - 1, i - 1) = nonzero();
  for (const auto& [i, j] : g.undirected_edges()) p.k(i - 1, j - 1) = p.k(j - 1, i - 1) = nonzero();
  auto dominate = [&](RationalMatrix& mat, std::size_t v) {
    Rational row = 1;
    for (std::size_t c = 0; c < m; ++c)
      if (c != v) row += abs(mat(v, c));
    mat(v, v) = row + extra(rng);
  };
  for (VertexId v : g.w_set()) dominate(p.phi, v - 1);
  for (VertexId v : g.u_set()) dominate(p.k, v - 1);
  return p;
}

/// Λ^{-1} = (I - L)^{-1}, by back-substitution along a topological order:
/// row i is e_i plus λ_ik times row k over the children k of i.
inline RationalMatrix lambda_inverse(const MixedGraph& g, const ParamAssignment& p) {
  const std::size_t m = g.vertex_count();
  RationalMatrix n(m, m);
  auto order = topological_order(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId i = *it;
    n(i - 1, i - 1) = 1;
    for (VertexId c : g.children(i)) {
      const Rational& l = p.lambda.at({i, c});
      for (std::size_t col = 0; col < m; ++col)
        if (n(c - 1, col) != 0) n(i - 1, col) += l * n(c - 1, col);
    }
  }
  return n;
}

/// The middle block K^{-1} ⊕ Φ, in vertex coordinates.
inline RationalMatrix noise_covariance(const MixedGraph& g, const ParamAssignment& p) {
  const std::size_t m = g.vertex_count();
  RationalMatrix omega(m, m);
  for (VertexId a : g.w_set())
    for (VertexId b : g.w_set()) omega(a - 1, b - 1) = p.phi(a - 1, b - 1);
  if (!g.u_set().empty()) {
    std::vector<std::size_t> u;
    for (VertexId v : g.u_set()) u.push_back(v - 1);
    auto kinv = inverse(p.k.select(u, u));
    if (!kinv) throw Error("concentration matrix K is singular");
    for (std::size_t r = 0; r < u.size(); ++r)
      for (std::size_t c = 0; c < u.size(); ++c) omega(u[r], u[c]) = (*kinv)(r, c);
  }
  return omega;
}

inline RationalMatrix build_covariance(const MixedGraph& g, const ParamAssignment& p) {
  RationalMatrix n = lambda_inverse(g, p);
  return n.transpose() * noise_covariance(g, p) * n;
}

/// Σ_{A,B} with vertex ids as row/column labels, in increasing order.
inline RationalMatrix submatrix(const RationalMatrix& m, const VertexSet& rows, const VertexSet& cols) {
  std::vector<std::size_t> r, c;
  for (VertexId v : rows) r.push_back(v - 1);
  for (VertexId v : cols) c.push_back(v - 1);
  return m.select(r, c);
}

/// Max over `trials` independent samples (seeds seed, seed+1, ...) of the
/// exact rank of Σ_{A,B}. A sample lands on the non-generic locus with
/// probability at most (polynomial degree)/scale, so taking the maximum
/// recovers the generic rank with overwhelming probability.
inline std::size_t generic_rank_oracle(const MixedGraph& g, const VertexSet& A, const VertexSet& B,
                                       std::uint64_t seed, int trials = kDefaultTrials,
                                       std::int64_t scale = kDefaultScale) {
  std::size_t best = 0;
  for (int t = 0; t < trials; ++t) {
    RationalMatrix sigma = build_covariance(g, sample_parameters(g, seed + t, scale));
    best = std::max(best, exact_rank(submatrix(sigma, A, B)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Trek rules

namespace detail {

inline Rational path_weight(const ParamAssignment& p, const Path& path) {
  Rational w = 1;
  for (std::size_t k = 1; k < path.size(); ++k) w *= p.lambda.at({path[k - 1], path[k]});
  return w;
}

// Variance attached to a trek top when the middle block is diagonal.
inline Rational top_variance(const MixedGraph& g, const ParamAssignment& p, VertexId v) {
  if (g.u_set().count(v)) return Rational(1) / p.k(v - 1, v - 1);
  return p.phi(v - 1, v - 1);
}

}  // namespace detail

/// σ_ij as the sum over all treks of (top variance or φ_st) · λ^{left} · λ^{right}.
/// Bidirected edges are allowed; undirected edges are not, since their trek
/// set is infinite.
inline Rational trek_rule_covariance(const MixedGraph& g, const ParamAssignment& p, VertexId i, VertexId j,
                                     std::size_t cap = kDefaultCap) {
  if (!g.undirected_edges().empty())
    throw InvalidArgument("trek rule needs a graph without undirected edges; use build_covariance");
  Rational sum = 0;
  for (const Trek& t : enumerate_treks(g, i, j, cap)) {
    Rational w = t.middle_kind == MiddleKind::None ? detail::top_variance(g, p, t.middle[0])
                                                   : p.phi(t.middle[0] - 1, t.middle[1] - 1);
    sum += w * detail::path_weight(p, t.left) * detail::path_weight(p, t.right);
  }
  return sum;
}

/// The alternate node parameters a_v = σ_vv.
struct TrekRuleContext {
  std::map<VertexId, Rational> a;
};

inline TrekRuleContext make_trek_rule_context(const MixedGraph& g, const ParamAssignment& p) {
  RationalMatrix sigma = build_covariance(g, p);
  TrekRuleContext ctx;
  for (VertexId v = 1; v <= g.vertex_count(); ++v) ctx.a[v] = sigma(v - 1, v - 1);
  return ctx;
}

/// σ_ij as the sum over simple treks only, weighting each by a_top.
inline Rational simple_trek_rule_covariance(const MixedGraph& g, const ParamAssignment& p,
                                            const TrekRuleContext& ctx, VertexId i, VertexId j,
                                            std::size_t cap = kDefaultCap) {
  if (!g.is_dag()) throw InvalidArgument("simple trek rule needs a directed acyclic graph");
  Rational sum = 0;
  for (const Trek& t : enumerate_simple_treks(g, i, j, cap))
    sum += ctx.a.at(t.middle[0]) * detail::path_weight(p, t.left) * detail::path_weight(p, t.right);
  return sum;
}

// ---------------------------------------------------------------------------
// Determinant expansions

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Calls `visit(paths, perm)` for every system of vertex-disjoint paths joining
// the sources (in order) to distinct targets; perm[k] is the index of the
// target reached from sources[k]. `paths_between` lists candidate paths.
template <class PathsBetween, class Visit>
void for_each_disjoint_system(const std::vector<VertexId>& sources, const std::vector<VertexId>& targets,
                              PathsBetween paths_between, std::size_t cap, Visit visit) {
  std::vector<std::vector<std::vector<Path>>> candidates(sources.size());
  for (std::size_t a = 0; a < sources.size(); ++a)
    for (VertexId b : targets) candidates[a].push_back(paths_between(sources[a], b));
  std::vector<Path> chosen;
  std::vector<std::size_t> perm;
  std::vector<char> target_used(targets.size(), 0);
  VertexSet used;
  std::size_t systems = 0;
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == sources.size()) {
      if (++systems > cap) throw CapExceeded("more than " + std::to_string(cap) + " path systems");
      visit(chosen, perm);
      return;
    }
    for (std::size_t b = 0; b < targets.size(); ++b) {
      if (target_used[b]) continue;
      for (const Path& path : candidates[a][b]) {
        if (std::any_of(path.begin(), path.end(), [&](VertexId v) { return used.count(v) > 0; })) continue;
        used.insert(path.begin(), path.end());
        target_used[b] = 1;
        chosen.push_back(path);
        perm.push_back(b);
        self(self, a + 1);
        perm.pop_back();
        chosen.pop_back();
        target_used[b] = 0;
        for (VertexId v : path) used.erase(v);
      }
    }
  };
  rec(rec, 0);
}

}  // namespace detail

struct GvlPair {
  Rational determinant;  ///< det (Λ^{-1})_{R,S}
  Rational path_sum;     ///< signed weight of the vertex-disjoint path systems R -> S
};

/// Both sides of the Gessel–Viennot–Lindström identity for (Λ^{-1})_{R,S}.
inline GvlPair gvl_minor_two_ways(const MixedGraph& g, const ParamAssignment& p, const VertexSet& R,
                                  const VertexSet& S, std::size_t cap = kDefaultCap) {
  if (R.size() != S.size()) throw InvalidArgument("R and S must have the same size");
  GvlPair out;
  out.determinant = determinant(submatrix(lambda_inverse(g, p), R, S));
  out.path_sum = 0;
  detail::for_each_disjoint_system(
      std::vector<VertexId>(R.begin(), R.end()), std::vector<VertexId>(S.begin(), S.end()),
      [&](VertexId a, VertexId b) { return directed_paths(g, a, b); }, cap,
      [&](const std::vector<Path>& paths, const std::vector<std::size_t>& perm) {
        Rational w = detail::permutation_sign(perm);
        for (const Path& path : paths) w *= detail::path_weight(p, path);
        out.path_sum += w;
      });
  return out;
}

/// det Σ_{A,B} expanded as Σ_S det(Λ^{-1})_{S,A} det(Λ^{-1})_{S,B} ω_S over
/// all S with #S = #A, where ω_S is the product of the (diagonal) noise
/// variances. Needs a graph with directed edges only.
inline Rational cauchy_binet_minor(const MixedGraph& g, const ParamAssignment& p, const VertexSet& A,
                                   const VertexSet& B) {
  if (!g.is_dag()) throw InvalidArgument("Cauchy–Binet expansion needs a directed acyclic graph");
  if (A.size() != B.size()) throw InvalidArgument("A and B must have the same size");
  const int m = g.vertex_count();
  const std::size_t k = A.size();
  RationalMatrix n = lambda_inverse(g, p);
  Rational sum = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    VertexSet s;
    Rational omega = 1;
    for (int v = 1; v <= m; ++v)
      if ((mask >> (v - 1)) & 1) {
        s.insert(v);
        omega *= detail::top_variance(g, p, v);
      }
    Rational left = determinant(submatrix(n, s, A));
    if (left == 0) continue;
    sum += left * determinant(submatrix(n, s, B)) * omega;
  }
  return sum;
}

struct UndirectedMinor {
  Rational minor;          ///< det Σ_{A,B} with Σ = K^{-1}
  bool disjoint_system;    ///< a vertex-disjoint path system A -> B exists in the doubled graph
};

/// Exact minor of Σ = K^{-1} next to the purely combinatorial verdict: the
/// minor vanishes identically iff no vertex-disjoint path system joins A to B
/// when each undirected edge is replaced by two opposite directed edges.
inline UndirectedMinor undirected_minor_check(const MixedGraph& g, const ParamAssignment& p, const VertexSet& A,
                                              const VertexSet& B, std::size_t cap = kDefaultCap) {
  if (!g.directed_edges().empty() || !g.bidirected_edges().empty())
    throw InvalidArgument("undirected_minor_check needs a purely undirected graph");
  if (A.size() != B.size()) throw InvalidArgument("A and B must have the same size");
  UndirectedMinor out;
  out.minor = determinant(submatrix(build_covariance(g, p), A, B));
  out.disjoint_system = false;
  struct Found {};
  try {
    detail::for_each_disjoint_system(
        std::vector<VertexId>(A.begin(), A.end()), std::vector<VertexId>(B.begin(), B.end()),
        [&](VertexId a, VertexId b) { return a == b ? std::vector<Path>{{a}} : undirected_paths(g, a, b); }, cap,
        [](const auto&, const auto&) { throw Found{}; });
  } catch (const Found&) {
    out.disjoint_system = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bidirected subdivision

/// Parameters on g reproducing the covariance of its bidirected subdivision
/// `sub` under `p_sub`: for the latent vertex v of i <-> j,
///   φ_ij = φ̃_vv λ̃_vi λ̃_vj   and   φ_ii = φ̃_ii + Σ φ̃_vv λ̃_vi².
inline ParamAssignment translate_subdivision_parameters(const MixedGraph& g, const MixedGraph& sub,
                                                        const ParamAssignment& p_sub) {
  const int m = g.vertex_count();
  if (sub.vertex_count() != m + static_cast<int>(g.bidirected_edges().size()))
    throw InvalidArgument("second graph is not the bidirected subdivision of the first");
  ParamAssignment p{{}, RationalMatrix(m, m), RationalMatrix(m, m)};
  for (const auto& e : g.directed_edges()) p.lambda[e] = p_sub.lambda.at(e);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      p.k(r, c) = p_sub.k(r, c);
      p.phi(r, c) = p_sub.phi(r, c);
    }
  VertexId v = m + 1;
  for (const auto& [i, j] : g.bidirected_edges()) {
    const Rational& var = p_sub.phi(v - 1, v - 1);
    const Rational& li = p_sub.lambda.at({v, i});
    const Rational& lj = p_sub.lambda.at({v, j});
    p.phi(i - 1, j - 1) = p.phi(j - 1, i - 1) = var * li * lj;
    p.phi(i - 1, i - 1) += var * li * li;
    p.phi(j - 1, j - 1) += var * lj * lj;
    ++v;
  }
  return p;
}

}  // namespace treksep
